#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adx/model.hpp"
#include "adx/records.hpp"

namespace adx {

// Dependency list: CSV with header `source,target,kind,weight` (weight column
// optional) or a JSON array of objects with those fields.
std::vector<RawDependencyRecord> parse_deps(std::string_view text);

// `git log --numstat` output. Binary entries (`-\t-\tpath`) parse with zero
// counts and the binary flag; brace renames (`a/{old => new}/b`) and plain
// renames (`old => new`) fill `old_path`.
std::vector<RawCommitRecord> parse_gitlog(std::string_view text);

// Issues: CSV with header `key,kind,opened_at,closed_at,status` or a JSON
// array. Kinds and statuses map case-insensitively; unknown values become
// Other.
std::vector<Issue> parse_issues(std::string_view text);

// Releases: CSV with header `name,timestamp` or a JSON array.
std::vector<Release> parse_releases(std::string_view text);

// Optional file list: CSV with header `path,package` or a JSON array.
std::vector<FileSpec> parse_files(std::string_view text);

// Canonical writers. parse(write(x)) == x for every reader above.
std::string write_deps_csv(const std::vector<RawDependencyRecord>& records);
std::string write_deps_json(const std::vector<RawDependencyRecord>& records);
std::string write_gitlog(const std::vector<RawCommitRecord>& commits);
std::string write_issues_csv(const std::vector<Issue>& issues);
std::string write_issues_json(const std::vector<Issue>& issues);

// Rendering of a rename in numstat form, using the same prefix/suffix
// compression as git (`src/{old => new}/A.java`).
std::string format_rename(std::string_view old_path, std::string_view new_path);

// Inverse of format_rename for a numstat path field. Returns {old, new};
// old is empty when the field is not a rename.
std::pair<std::string, std::string> expand_rename(std::string_view field);

inline constexpr std::string_view kDefaultIssueKeyPattern =
    R"(\b[A-Z][A-Z0-9]*-[0-9]+\b)";

struct LinkRule {
  std::string pattern{kDefaultIssueKeyPattern};
};

struct UnmatchedReference {
  std::string commit;
  std::string key;
  friend bool operator==(const UnmatchedReference&,
                         const UnmatchedReference&) = default;
};

struct LinkReport {
  std::size_t linked_commits = 0;
  std::vector<UnmatchedReference> unmatched;
};

// Replaces each commit's linked_issues with the known issue keys its message
// mentions. Mentions of unknown keys are collected in the report.
// Throws InvalidPattern if the rule does not compile.
LinkReport link_commits(std::vector<RawCommitRecord>& commits,
                        const std::vector<Issue>& issues,
                        const LinkRule& rule = {});

// Reads a whole file; throws Io.
std::string read_text_file(const std::string& path);

}  // namespace adx
