#include "adx/history.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adx/error.hpp"
#include "adx/timeutil.hpp"

namespace adx {
namespace {

// Number of top commits in the top-p fraction; the epsilon keeps exact
// fractions such as 0.1 * 1000 from rounding up to 101.
std::size_t top_count(double p, std::size_t commits) {
  const double raw = p * static_cast<double>(commits);
  return std::min(commits, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

std::vector<std::size_t> commits_by_churn(const Snapshot& snapshot) {
  std::vector<std::size_t> order(snapshot.commits().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return snapshot.commits()[a].churn() > snapshot.commits()[b].churn();
  });
  return order;
}

double concentration_from(const Snapshot& snapshot,
                          const std::vector<std::size_t>& order, double p) {
  const std::size_t k = top_count(p, order.size());
  std::vector<char> touched(snapshot.size(), 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& ch : snapshot.commits()[order[i]].changes) {
      if (!touched[ch.file]) {
        touched[ch.file] = 1;
        ++count;
      }
    }
  }
  return snapshot.size() == 0
             ? 0.0
             : static_cast<double>(count) / static_cast<double>(snapshot.size());
}

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace

double churn_concentration(const Snapshot& snapshot, double p) {
  if (snapshot.commits().empty()) {
    throw Error(ErrorCode::EmptyHistory, "no commits in snapshot");
  }
  return concentration_from(snapshot, commits_by_churn(snapshot), p);
}

ChurnStats churn_stats(const Snapshot& snapshot) {
  if (snapshot.commits().empty()) {
    throw Error(ErrorCode::EmptyHistory, "no commits in snapshot");
  }
  const std::size_t n = snapshot.size();
  ChurnStats stats;
  stats.file_churn.assign(n, 0);
  std::vector<std::size_t> touches(n, 0);
  std::vector<const std::string*> author(n, nullptr);
  std::vector<char> single(n, 1);

  for (const auto& c : snapshot.commits()) {
    stats.commit_churn.push_back(c.churn());
    for (const auto& ch : c.changes) {
      stats.file_churn[ch.file] += ch.churn();
      ++touches[ch.file];
      if (!author[ch.file]) {
        author[ch.file] = &c.author;
      } else if (*author[ch.file] != c.author) {
        single[ch.file] = 0;
      }
    }
  }

  for (std::size_t f = 0; f < n; ++f) {
    if (touches[f] > 0) {
      ++stats.files_touched;
      ++stats.files_with_history;
      if (single[f]) ++stats.single_contributor;
    }
    // Only the creating commit, or no recorded change at all.
    if (touches[f] <= 1) ++stats.never_changed;
  }
  if (n > 0) {
    stats.never_changed_fraction =
        static_cast<double>(stats.never_changed) / static_cast<double>(n);
  }
  if (stats.files_with_history > 0) {
    stats.single_contributor_fraction = static_cast<double>(stats.single_contributor) /
                                        static_cast<double>(stats.files_with_history);
  }

  const auto order = commits_by_churn(snapshot);
  for (double p : kConcentrationPoints) {
    stats.concentration.emplace_back(p, concentration_from(snapshot, order, p));
  }
  return stats;
}

OverlapMatrix release_overlap(const Snapshot& snapshot) {
  if (snapshot.releases().size() < 2) {
    throw Error(ErrorCode::InsufficientReleases,
                "release overlap needs at least two releases");
  }
  auto releases = snapshot.releases();
  std::sort(releases.begin(), releases.end(), [](const Release& a, const Release& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.name < b.name;
  });

  OverlapMatrix result;
  const std::size_t w = releases.size() - 1;
  std::vector<std::vector<char>> member(w, std::vector<char>(snapshot.size(), 0));
  for (const auto& c : snapshot.commits()) {
    for (std::size_t i = 0; i < w; ++i) {
      if (c.timestamp > releases[i].timestamp && c.timestamp <= releases[i + 1].timestamp) {
        for (const auto& ch : c.changes) member[i][ch.file] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < w; ++i) {
    result.window_names.push_back(releases[i].name + ".." + releases[i + 1].name);
    std::vector<FileId> files;
    for (std::size_t f = 0; f < snapshot.size(); ++f) {
      if (member[i][f]) files.push_back(static_cast<FileId>(f));
    }
    result.windows.push_back(std::move(files));
  }

  result.jaccard.assign(w, std::vector<double>(w, 0.0));
  result.min_normalized.assign(w, std::vector<double>(w, 0.0));
  std::vector<double> nonconsecutive_j, all_j, nonconsecutive_m, all_m;
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = i; j < w; ++j) {
      const auto& a = result.windows[i];
      const auto& b = result.windows[j];
      std::vector<FileId> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(common));
      const double inter = static_cast<double>(common.size());
      const double uni = static_cast<double>(a.size() + b.size()) - inter;
      const double smaller = static_cast<double>(std::min(a.size(), b.size()));
      const double jac = uni > 0 ? inter / uni : 0.0;
      const double mn = smaller > 0 ? inter / smaller : 0.0;
      result.jaccard[i][j] = result.jaccard[j][i] = jac;
      result.min_normalized[i][j] = result.min_normalized[j][i] = mn;
      if (j == i) continue;
      all_j.push_back(jac);
      all_m.push_back(mn);
      if (j - i >= 2) {
        nonconsecutive_j.push_back(jac);
        nonconsecutive_m.push_back(mn);
      }
    }
  }
  result.mean_nonconsecutive_jaccard = mean_of(nonconsecutive_j);
  result.mean_all_jaccard = mean_of(all_j);
  result.mean_nonconsecutive_min = mean_of(nonconsecutive_m);
  result.mean_all_min = mean_of(all_m);
  return result;
}

TimeWindow parse_time_window(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "window must look like FROM..TO");
  }
  TimeWindow window;
  auto bound = [&](std::string_view part) -> std::optional<UnixSeconds> {
    if (part.empty()) return std::nullopt;
    auto t = parse_iso8601(part);
    if (!t) {
      throw Error(ErrorCode::InvalidArgument, "bad window bound `" + std::string(part) + "`");
    }
    return t;
  };
  window.from = bound(text.substr(0, dots));
  window.to = bound(text.substr(dots + 2));
  return window;
}

std::vector<double> IssueStats::churn_sample() const {
  std::vector<double> out;
  for (const auto& s : fixed_samples) {
    if (s.commits > 0) out.push_back(static_cast<double>(s.churn));
  }
  return out;
}

std::vector<double> IssueStats::duration_sample() const {
  std::vector<double> out;
  for (const auto& s : fixed_samples) {
    if (s.duration_days) out.push_back(*s.duration_days);
  }
  return out;
}

IssueStats issue_stats(const Snapshot& snapshot, const TimeWindow& window,
                       const std::set<IssueKind>& kinds) {
  std::map<std::string, IssueSample> samples;
  std::map<std::string, std::set<FileId>> files;
  IssueStats stats;
  for (const auto& issue : snapshot.issues()) {
    if (!kinds.empty() && !kinds.contains(issue.kind)) continue;
    if (issue.opened_at && window.contains(*issue.opened_at)) ++stats.opened;
    if (issue.is_fixed() && window.contains(*issue.closed_at)) {
      ++stats.fixed;
      IssueSample s;
      s.key = issue.key;
      if (issue.opened_at) {
        s.duration_days =
            static_cast<double>(*issue.closed_at - *issue.opened_at) / kSecondsPerDay;
      }
      samples.emplace(issue.key, std::move(s));
    }
  }
  for (const auto& c : snapshot.commits()) {
    for (const auto& key : c.linked_issues) {
      auto it = samples.find(key);
      if (it == samples.end()) continue;
      it->second.churn += c.churn();
      ++it->second.commits;
      for (const auto& ch : c.changes) files[key].insert(ch.file);
    }
  }
  // Keep issue-tracker order.
  for (const auto& issue : snapshot.issues()) {
    auto it = samples.find(issue.key);
    if (it == samples.end()) continue;
    it->second.files = files[issue.key].size();
    stats.fixed_samples.push_back(std::move(it->second));
  }

  std::vector<double> file_counts;
  for (const auto& s : stats.fixed_samples) {
    if (s.commits > 0) {
      ++stats.changed_code;
      file_counts.push_back(static_cast<double>(s.files));
    }
  }
  stats.mean_churn = mean_of(stats.churn_sample());
  stats.mean_duration_days = mean_of(stats.duration_sample());
  stats.mean_files = mean_of(file_counts);
  return stats;
}

}  // namespace adx
