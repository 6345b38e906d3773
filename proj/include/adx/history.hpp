#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adx/model.hpp"
#include "adx/snapshot.hpp"

namespace adx {

inline constexpr double kConcentrationPoints[] = {0.01, 0.05, 0.10, 0.25,
                                                  0.50, 0.75, 1.00};

struct ChurnStats {
  std::vector<std::uint64_t> file_churn;    // indexed by file id
  std::vector<std::uint64_t> commit_churn;  // in snapshot commit order
  // (commit fraction p, fraction of all files touched by the top-p commits)
  std::vector<std::pair<double, double>> concentration;
  std::size_t files_touched = 0;
  std::size_t never_changed = 0;
  double never_changed_fraction = 0.0;  // over all files
  std::size_t single_contributor = 0;
  std::size_t files_with_history = 0;
  double single_contributor_fraction = 0.0;  // over files with history
};

// Throws EmptyHistory when the snapshot has no commits.
ChurnStats churn_stats(const Snapshot& snapshot);

// Fraction of all files touched by the ceil(p * commits) commits with the
// highest churn (ties keep history order).
double churn_concentration(const Snapshot& snapshot, double p);

struct OverlapMatrix {
  // Window i spans (release i, release i+1] in timestamp order.
  std::vector<std::string> window_names;
  std::vector<std::vector<FileId>> windows;
  std::vector<std::vector<double>> jaccard;
  // |A ∩ B| / min(|A|, |B|)
  std::vector<std::vector<double>> min_normalized;
  // Means over window pairs at distance >= 2 and over all distinct pairs;
  // absent when no such pair exists.
  std::optional<double> mean_nonconsecutive_jaccard;
  std::optional<double> mean_all_jaccard;
  std::optional<double> mean_nonconsecutive_min;
  std::optional<double> mean_all_min;
};

// Throws InsufficientReleases with fewer than two releases.
OverlapMatrix release_overlap(const Snapshot& snapshot);

// Half-open [from, to); absent bounds are open.
struct TimeWindow {
  std::optional<UnixSeconds> from;
  std::optional<UnixSeconds> to;
  bool contains(UnixSeconds t) const {
    return (!from || t >= *from) && (!to || t < *to);
  }
};

// `from..to` with ISO-8601 bounds, either side may be empty.
TimeWindow parse_time_window(std::string_view text);

struct IssueSample {
  std::string key;
  std::uint64_t churn = 0;
  std::optional<double> duration_days;
  std::size_t files = 0;
  std::size_t commits = 0;
};

struct IssueStats {
  std::size_t opened = 0;
  std::size_t fixed = 0;
  // One sample per issue fixed in the window.
  std::vector<IssueSample> fixed_samples;
  // Fixed issues whose linked commits changed code.
  std::size_t changed_code = 0;
  // Mean churn over fixed issues that changed code.
  std::optional<double> mean_churn;
  // Mean open-to-close time in days over fixed issues with both timestamps.
  std::optional<double> mean_duration_days;
  std::optional<double> mean_files;

  std::vector<double> churn_sample() const;     // changed-code issues only
  std::vector<double> duration_sample() const;  // issues with a duration
};

// An empty `kinds` set means all kinds.
IssueStats issue_stats(const Snapshot& snapshot, const TimeWindow& window = {},
                       const std::set<IssueKind>& kinds = {});

}  // namespace adx
