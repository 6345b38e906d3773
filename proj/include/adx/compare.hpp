#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adx/analysis.hpp"
#include "adx/stats.hpp"

namespace adx {

enum class MetricUnit { Count, Percent, Days, Lines };

struct MetricComparison {
  std::string id;     // stable machine name, e.g. "churn_per_bug"
  std::string label;  // report row label
  MetricUnit unit = MetricUnit::Count;
  std::optional<double> before;
  std::optional<double> after;
  std::optional<double> delta;    // after - before
  std::optional<double> percent;  // 100 * delta / before, absent when before == 0
  std::optional<UTestResult> test;
};

struct ComparisonReport {
  std::string before_label;
  std::string after_label;
  std::vector<MetricComparison> metrics;

  const MetricComparison* find(std::string_view id) const;
};

MetricComparison compare_values(std::string id, std::string label, MetricUnit unit,
                                std::optional<double> before,
                                std::optional<double> after);

// PC and DL are compared in percent units. Per-issue churn and duration
// distributions carry a two-sided Mann-Whitney U test.
ComparisonReport compare_analyses(const Analysis& before, const Analysis& after);

ComparisonReport compare_snapshots(const Snapshot& before, const Snapshot& after,
                                   const AnalysisOptions& options = {});

}  // namespace adx
