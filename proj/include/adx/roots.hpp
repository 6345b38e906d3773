#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adx/model.hpp"
#include "adx/snapshot.hpp"
#include "adx/visibility.hpp"

namespace adx {

// Number of distinct Bug issues with at least one linked commit touching the
// file. Files without bugs are omitted. Throws NoBugData when empty.
std::map<FileId, std::uint32_t> bug_weights(const Snapshot& snapshot);

enum class SpaceDirection {
  Up,    // leader plus every file that transitively depends on it
  Down,  // leader plus every file it transitively depends on
};

struct DrSpace {
  FileId leader = 0;
  std::vector<FileId> members;  // sorted, contains leader
  friend bool operator==(const DrSpace&, const DrSpace&) = default;
};

// `transposed` is the column view of the visibility matrix (needed for Up).
// Throws UnknownFile.
DrSpace drspace(const VisibilityMatrix& visibility, FileId leader,
                SpaceDirection direction = SpaceDirection::Up);
DrSpace drspace(const VisibilityMatrix& visibility,
                const VisibilityMatrix& transposed, FileId leader,
                SpaceDirection direction);

struct RootPick {
  DrSpace space;
  std::uint64_t marginal_weight = 0;
  std::uint64_t cumulative_weight = 0;
  double cumulative_coverage = 0.0;
};

struct RootSet {
  std::vector<RootPick> roots;
  std::uint64_t covered_weight = 0;
  std::uint64_t total_weight = 0;
  double coverage = 0.0;
  double target = 0.8;
  bool target_reached = false;  // false: partial set, TargetUnreachable
  std::size_t files_in_roots = 0;
  double files_fraction = 0.0;  // files_in_roots / n
};

struct RootOptions {
  double target = 0.8;
  std::size_t max_candidates = 100;
  SpaceDirection direction = SpaceDirection::Up;
};

// Greedy cover of bug weight by DRSpaces led by the most bug-prone files.
// Throws NoBugData.
RootSet detect_roots(const Snapshot& snapshot, const RootOptions& options = {});
RootSet detect_roots(const Snapshot& snapshot, const VisibilityMatrix& visibility,
                     const RootOptions& options);

// Greedy core over explicit candidates; ties go to the lower leader id
// (ids follow path order).
RootSet select_roots(const std::vector<DrSpace>& candidates,
                     const std::map<FileId, std::uint32_t>& weights,
                     std::size_t n, double target);

}  // namespace adx
