#pragma once

#include <optional>
#include <string>

#include "adx/drh.hpp"
#include "adx/error.hpp"
#include "adx/flaws.hpp"
#include "adx/history.hpp"
#include "adx/roots.hpp"
#include "adx/snapshot.hpp"
#include "adx/visibility.hpp"

namespace adx {

struct AnalysisOptions {
  Thresholds thresholds;
  RootOptions roots;
  std::optional<std::size_t> max_commit_size;
  TimeWindow window;
};

// One report section: a value, or the error that stopped it.
template <class T>
struct Section {
  std::optional<T> value;
  std::optional<ErrorCode> error_code;
  std::string error;

  bool ok() const { return value.has_value(); }
};

struct HistoryMetrics {
  Section<ChurnStats> churn;
  Section<OverlapMatrix> overlap;
  Section<IssueStats> issues;  // all kinds
  Section<IssueStats> bugs;
};

struct Analysis {
  std::string label;
  std::size_t files = 0;
  std::size_t commits = 0;
  std::size_t issue_count = 0;
  std::uint64_t total_churn = 0;
  double root_target = 0.8;

  Section<CouplingReport> coupling;
  Section<DrhStructure> drh;
  Section<DlReport> dl;
  Section<FlawReport> flaws;
  Section<RootSet> roots;
  HistoryMetrics history;
};

// Runs a function and records either its value or its adx::Error.
template <class T, class F>
Section<T> capture(F&& f) {
  Section<T> s;
  try {
    s.value.emplace(f());
  } catch (const Error& e) {
    s.error_code = e.code();
    s.error = e.what();
  }
  return s;
}

HistoryMetrics history_metrics(const Snapshot& snapshot, const TimeWindow& window);

// Every analysis over one snapshot. The closure and co-change matrix are
// computed once and shared; a failing section never aborts the others.
Analysis analyze(const Snapshot& snapshot, const AnalysisOptions& options = {});

}  // namespace adx
