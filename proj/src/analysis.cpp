#include "adx/analysis.hpp"

#include "adx/cochange.hpp"

namespace adx {

HistoryMetrics history_metrics(const Snapshot& snapshot, const TimeWindow& window) {
  HistoryMetrics h;
  h.churn = capture<ChurnStats>([&] { return churn_stats(snapshot); });
  h.overlap = capture<OverlapMatrix>([&] { return release_overlap(snapshot); });
  h.issues = capture<IssueStats>([&] { return issue_stats(snapshot, window); });
  h.bugs = capture<IssueStats>(
      [&] { return issue_stats(snapshot, window, {IssueKind::Bug}); });
  return h;
}

Analysis analyze(const Snapshot& snapshot, const AnalysisOptions& options) {
  Analysis a;
  a.label = snapshot.metadata().label;
  a.files = snapshot.size();
  a.commits = snapshot.commits().size();
  a.issue_count = snapshot.issues().size();
  a.total_churn = snapshot.total_churn();
  a.root_target = options.roots.target;

  const auto& graph = snapshot.graph();
  const auto visibility = transitive_closure(graph);
  const auto cochange = cochange_matrix(snapshot, options.max_commit_size);

#pragma omp parallel sections
  {
#pragma omp section
    a.coupling = capture<CouplingReport>([&] { return propagation_cost(graph, visibility); });
#pragma omp section
    {
      a.drh = capture<DrhStructure>([&] { return build_drh(graph); });
      a.dl = capture<DlReport>([&] {
        if (!a.drh.ok()) return decoupling_level(graph, visibility);
        return decoupling_level(visibility, a.drh.value->module_of);
      });
    }
#pragma omp section
    a.flaws = capture<FlawReport>(
        [&] { return flaw_report(snapshot, options.thresholds, visibility, cochange); });
#pragma omp section
    a.roots = capture<RootSet>(
        [&] { return detect_roots(snapshot, visibility, options.roots); });
#pragma omp section
    a.history = history_metrics(snapshot, options.window);
  }
  return a;
}

}  // namespace adx
