#include "adx/roots.hpp"

#include <algorithm>
#include <set>

#include "adx/error.hpp"

namespace adx {

std::map<FileId, std::uint32_t> bug_weights(const Snapshot& snapshot) {
  std::map<FileId, std::set<std::string>> bugs_per_file;
  for (const auto& c : snapshot.commits()) {
    for (const auto& key : c.linked_issues) {
      const Issue* issue = snapshot.find_issue(key);
      if (!issue || issue->kind != IssueKind::Bug) continue;
      for (const auto& ch : c.changes) bugs_per_file[ch.file].insert(key);
    }
  }
  std::map<FileId, std::uint32_t> weights;
  for (const auto& [file, keys] : bugs_per_file) {
    weights.emplace(file, static_cast<std::uint32_t>(keys.size()));
  }
  if (weights.empty()) {
    throw Error(ErrorCode::NoBugData, "no bug issue is linked to a commit that changes files");
  }
  return weights;
}

DrSpace drspace(const VisibilityMatrix& visibility, FileId leader,
                SpaceDirection direction) {
  if (direction == SpaceDirection::Down) {
    return drspace(visibility, visibility, leader, direction);
  }
  if (leader >= visibility.size()) {
    throw Error(ErrorCode::UnknownFile, "unknown leader file id " + std::to_string(leader));
  }
  DrSpace space{leader, {}};
  for (std::size_t g = 0; g < visibility.size(); ++g) {
    if (visibility.reaches(static_cast<FileId>(g), leader)) {
      space.members.push_back(static_cast<FileId>(g));
    }
  }
  return space;
}

DrSpace drspace(const VisibilityMatrix& visibility, const VisibilityMatrix& transposed,
                FileId leader, SpaceDirection direction) {
  if (leader >= visibility.size()) {
    throw Error(ErrorCode::UnknownFile, "unknown leader file id " + std::to_string(leader));
  }
  const auto& source = direction == SpaceDirection::Up ? transposed : visibility;
  return DrSpace{leader, source.row_members(leader)};
}

RootSet select_roots(const std::vector<DrSpace>& candidates,
                     const std::map<FileId, std::uint32_t>& weights, std::size_t n,
                     double target) {
  RootSet result;
  result.target = target;
  for (const auto& [_, w] : weights) result.total_weight += w;

  std::vector<char> covered(n, 0);
  std::vector<char> used(candidates.size(), 0);
  auto weight_of = [&](FileId f) -> std::uint64_t {
    auto it = weights.find(f);
    return it == weights.end() ? 0 : it->second;
  };
  auto reached = [&] {
    return result.total_weight > 0 &&
           static_cast<double>(result.covered_weight) >=
               target * static_cast<double>(result.total_weight);
  };

  while (!reached()) {
    std::size_t best = candidates.size();
    std::uint64_t best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      std::uint64_t gain = 0;
      for (auto f : candidates[i].members) {
        if (!covered[f]) gain += weight_of(f);
      }
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 && best < candidates.size() &&
           candidates[i].leader < candidates[best].leader)) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == candidates.size()) break;
    used[best] = 1;
    for (auto f : candidates[best].members) covered[f] = 1;
    result.covered_weight += best_gain;
    RootPick pick;
    pick.space = candidates[best];
    pick.marginal_weight = best_gain;
    pick.cumulative_weight = result.covered_weight;
    pick.cumulative_coverage = static_cast<double>(result.covered_weight) /
                               static_cast<double>(result.total_weight);
    result.roots.push_back(std::move(pick));
  }

  result.coverage = result.total_weight == 0
                        ? 0.0
                        : static_cast<double>(result.covered_weight) /
                              static_cast<double>(result.total_weight);
  result.target_reached = reached();
  result.files_in_roots =
      static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
  result.files_fraction =
      n == 0 ? 0.0 : static_cast<double>(result.files_in_roots) / static_cast<double>(n);
  return result;
}

RootSet detect_roots(const Snapshot& snapshot, const RootOptions& options) {
  return detect_roots(snapshot, transitive_closure(snapshot.graph()), options);
}

RootSet detect_roots(const Snapshot& snapshot, const VisibilityMatrix& visibility,
                     const RootOptions& options) {
  if (!(options.target > 0.0 && options.target <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "root coverage target must be in (0, 1]");
  }
  const auto weights = bug_weights(snapshot);

  std::vector<std::pair<FileId, std::uint32_t>> ranked(weights.begin(), weights.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > options.max_candidates) ranked.resize(options.max_candidates);

  const auto transposed = options.direction == SpaceDirection::Up
                              ? visibility.transposed()
                              : VisibilityMatrix{};
  std::vector<DrSpace> candidates(ranked.size());
  const auto count = static_cast<std::int64_t>(ranked.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    candidates[i] = options.direction == SpaceDirection::Up
                        ? drspace(visibility, transposed, ranked[i].first, SpaceDirection::Up)
                        : drspace(visibility, visibility, ranked[i].first,
                                  SpaceDirection::Down);
  }
  return select_roots(candidates, weights, snapshot.size(), options.target);
}

}  // namespace adx
