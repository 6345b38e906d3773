#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace adx {

// Dense file index, 0..n-1, assigned in sorted-path order.
using FileId = std::uint32_t;

// Seconds since the Unix epoch, UTC.
using UnixSeconds = std::int64_t;

enum class DependencyKind : std::uint8_t {
  Call,
  Use,
  Create,
  Cast,
  Throw,
  Extend,
  Implement,
  Other,
};

inline constexpr int kDependencyKindCount = 8;

std::string_view to_string(DependencyKind kind);
// Two-letter abbreviation used in DSM cells ("Cl", "Us", ...).
std::string_view abbreviation(DependencyKind kind);
// Exact (case-insensitive) name match; nullopt for unknown strings.
std::optional<DependencyKind> parse_dependency_kind(std::string_view text);

inline bool is_inheritance(DependencyKind kind) {
  return kind == DependencyKind::Extend || kind == DependencyKind::Implement;
}

enum class IssueKind : std::uint8_t { Bug, Feature, Task, Improvement, Other };
enum class IssueStatus : std::uint8_t { Open, Fixed, Closed, Other };

std::string_view to_string(IssueKind kind);
std::string_view to_string(IssueStatus status);
// Case-insensitive; unknown strings map to Other.
IssueKind parse_issue_kind(std::string_view text);
IssueStatus parse_issue_status(std::string_view text);

struct FileNode {
  FileId id = 0;
  std::string path;
  std::string package;
  std::optional<std::string> creator;

  friend bool operator==(const FileNode&, const FileNode&) = default;
};

struct DependencyEdge {
  FileId source = 0;
  FileId target = 0;
  DependencyKind kind = DependencyKind::Other;
  std::uint32_t weight = 1;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct FileChange {
  FileId file = 0;
  std::uint64_t added = 0;
  std::uint64_t deleted = 0;
  bool binary = false;

  std::uint64_t churn() const { return added + deleted; }
  friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct Commit {
  std::string id;
  UnixSeconds timestamp = 0;
  std::string author;
  std::string message;
  std::vector<FileChange> changes;
  std::set<std::string> linked_issues;

  std::uint64_t churn() const;
  friend bool operator==(const Commit&, const Commit&) = default;
};

struct Issue {
  std::string key;
  IssueKind kind = IssueKind::Other;
  std::optional<UnixSeconds> opened_at;
  std::optional<UnixSeconds> closed_at;
  IssueStatus status = IssueStatus::Open;

  // Status Fixed or Closed with a close timestamp.
  bool is_fixed() const {
    return (status == IssueStatus::Fixed || status == IssueStatus::Closed) &&
           closed_at.has_value();
  }
  friend bool operator==(const Issue&, const Issue&) = default;
};

struct Release {
  std::string name;
  UnixSeconds timestamp = 0;

  friend bool operator==(const Release&, const Release&) = default;
};

}  // namespace adx
