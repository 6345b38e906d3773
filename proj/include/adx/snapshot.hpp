#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "adx/graph.hpp"
#include "adx/model.hpp"
#include "adx/records.hpp"

namespace adx {

inline constexpr std::string_view kSchemaVersion = "1";

struct SnapshotMetadata {
  std::string label;
  UnixSeconds created_at = 0;
  std::string schema_version{kSchemaVersion};

  friend bool operator==(const SnapshotMetadata&,
                         const SnapshotMetadata&) = default;
};

// Immutable bundle of files, dependencies, history, issues and releases.
// Every analysis consumes one. Safe to share across threads.
class Snapshot {
 public:
  struct Parts {
    std::vector<FileNode> files;
    std::vector<DependencyEdge> edges;
    std::vector<Commit> commits;
    std::vector<Issue> issues;
    std::vector<Release> releases;
    SnapshotMetadata metadata;
  };

  // Checks every cross-reference (contiguous ids, unique paths and keys,
  // edge endpoints, change file ids) and freezes the parts.
  static Snapshot from_parts(Parts parts);

  std::size_t size() const { return files_.size(); }
  const std::vector<FileNode>& files() const { return files_; }
  const DependencyGraph& graph() const { return graph_; }
  const std::vector<Commit>& commits() const { return commits_; }
  const std::vector<Issue>& issues() const { return issues_; }
  const std::vector<Release>& releases() const { return releases_; }
  const SnapshotMetadata& metadata() const { return metadata_; }

  const FileNode& file(FileId id) const { return files_.at(id); }
  std::optional<FileId> find(std::string_view path) const;
  const Issue* find_issue(std::string_view key) const;

  std::uint64_t total_churn() const;

  friend bool operator==(const Snapshot& a, const Snapshot& b) {
    return a.files_ == b.files_ && a.graph_ == b.graph_ &&
           a.commits_ == b.commits_ && a.issues_ == b.issues_ &&
           a.releases_ == b.releases_ && a.metadata_ == b.metadata_;
  }

 private:
  Snapshot() = default;

  std::vector<FileNode> files_;
  DependencyGraph graph_;
  std::vector<Commit> commits_;
  std::vector<Issue> issues_;
  std::vector<Release> releases_;
  SnapshotMetadata metadata_;
  std::unordered_map<std::string, FileId> path_index_;
  std::unordered_map<std::string, std::size_t> issue_index_;
};

// Resolves raw records into a Snapshot.
//  - File ids follow sorted path order over declared files plus paths that
//    appear only in history.
//  - Rename chains in the history are unified to the newest path.
//  - A file's package is its explicit package or else its directory.
//  - A file's creator is the author of the earliest commit touching it.
//  - Unknown dependency kind strings become Other.
//  - created_at is the latest timestamp found in the inputs, so identical
//    inputs give identical snapshots.
// Throws DuplicatePath, SelfDependency, DanglingEdgeEndpoint.
Snapshot build_snapshot(std::span<const FileSpec> files,
                        std::span<const RawDependencyRecord> edges,
                        std::span<const RawCommitRecord> commits,
                        std::span<const Issue> issues,
                        std::span<const Release> releases,
                        std::string label);

// Declared files implied by a dependency list (both endpoints, deduplicated,
// sorted).
std::vector<FileSpec> files_from_dependencies(
    std::span<const RawDependencyRecord> edges);

// Directory portion of a path; "." for top-level files.
std::string default_package(std::string_view path);

// Versioned JSON document.
nlohmann::ordered_json snapshot_to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& doc);

void save_snapshot(const Snapshot& snapshot, const std::string& path);
Snapshot load_snapshot(const std::string& path);

}  // namespace adx
