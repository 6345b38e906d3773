#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adx/model.hpp"

namespace adx {

// Parsed but unresolved inputs. Paths are still strings; build_snapshot
// turns them into FileIds.

struct RawDependencyRecord {
  std::string source;
  std::string target;
  std::string kind;
  std::uint32_t weight = 1;

  friend bool operator==(const RawDependencyRecord&,
                         const RawDependencyRecord&) = default;
};

struct NumstatEntry {
  std::uint64_t added = 0;
  std::uint64_t deleted = 0;
  bool binary = false;
  // Post-change path; for renames the new path.
  std::string path;
  // Pre-rename path, only for rename lines.
  std::optional<std::string> old_path;

  friend bool operator==(const NumstatEntry&, const NumstatEntry&) = default;
};

struct RawCommitRecord {
  std::string hash;
  std::string author;
  UnixSeconds timestamp = 0;
  std::string message;
  std::vector<NumstatEntry> numstat;
  std::set<std::string> linked_issues;

  friend bool operator==(const RawCommitRecord&,
                         const RawCommitRecord&) = default;
};

// A declared file with an optional explicit package.
struct FileSpec {
  std::string path;
  std::optional<std::string> package;

  friend bool operator==(const FileSpec&, const FileSpec&) = default;
};

}  // namespace adx
