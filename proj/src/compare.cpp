#include "adx/compare.hpp"

#include <functional>

namespace adx {
namespace {

template <class T>
std::optional<double> get(const Section<T>& s, const std::function<std::optional<double>(const T&)>& f) {
  if (!s.value) return std::nullopt;
  return f(*s.value);
}

std::optional<UTestResult> u_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return std::nullopt;
  return mann_whitney_u(a, b);
}

std::vector<double> sample(const Section<IssueStats>& s, bool churn) {
  if (!s.value) return {};
  return churn ? s.value->churn_sample() : s.value->duration_sample();
}

}  // namespace

const MetricComparison* ComparisonReport::find(std::string_view id) const {
  for (const auto& m : metrics) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

MetricComparison compare_values(std::string id, std::string label, MetricUnit unit,
                                std::optional<double> before,
                                std::optional<double> after) {
  MetricComparison m;
  m.id = std::move(id);
  m.label = std::move(label);
  m.unit = unit;
  m.before = before;
  m.after = after;
  if (before && after) {
    m.delta = *after - *before;
    if (*before != 0.0) m.percent = 100.0 * *m.delta / *before;
  }
  return m;
}

ComparisonReport compare_analyses(const Analysis& before, const Analysis& after) {
  ComparisonReport r;
  r.before_label = before.label;
  r.after_label = after.label;
  auto add = [&](std::string id, std::string label, MetricUnit unit,
                 std::optional<double> b, std::optional<double> a) {
    r.metrics.push_back(compare_values(std::move(id), std::move(label), unit, b, a));
    return &r.metrics.back();
  };
  using IS = IssueStats;
  auto opened = [](const IS& s) -> std::optional<double> { return static_cast<double>(s.opened); };
  auto fixed = [](const IS& s) -> std::optional<double> { return static_cast<double>(s.fixed); };
  auto changed = [](const IS& s) -> std::optional<double> {
    return static_cast<double>(s.changed_code);
  };
  auto churn = [](const IS& s) { return s.mean_churn; };
  auto days = [](const IS& s) { return s.mean_duration_days; };
  const auto& hb = before.history;
  const auto& ha = after.history;

  add("files", "# of files", MetricUnit::Count, static_cast<double>(before.files),
      static_cast<double>(after.files));
  add("issues_opened", "# of issues opened", MetricUnit::Count, get<IS>(hb.issues, opened),
      get<IS>(ha.issues, opened));
  add("issues_fixed", "# of issues fixed", MetricUnit::Count, get<IS>(hb.issues, fixed),
      get<IS>(ha.issues, fixed));
  add("bugs_opened", "# of bugs opened", MetricUnit::Count, get<IS>(hb.bugs, opened),
      get<IS>(ha.bugs, opened));
  add("bugs_fixed", "# of bugs fixed", MetricUnit::Count, get<IS>(hb.bugs, fixed),
      get<IS>(ha.bugs, fixed));
  add("bugs_changed_code", "# of bugs that changed code", MetricUnit::Count,
      get<IS>(hb.bugs, changed), get<IS>(ha.bugs, changed));
  add("churn_per_issue", "Amount of churn per issue", MetricUnit::Lines,
      get<IS>(hb.issues, churn), get<IS>(ha.issues, churn))
      ->test = u_test(sample(hb.issues, true), sample(ha.issues, true));
  add("days_per_issue", "Average issue fixing time", MetricUnit::Days,
      get<IS>(hb.issues, days), get<IS>(ha.issues, days))
      ->test = u_test(sample(hb.issues, false), sample(ha.issues, false));
  add("churn_per_bug", "Amount of churn per bug", MetricUnit::Lines, get<IS>(hb.bugs, churn),
      get<IS>(ha.bugs, churn))
      ->test = u_test(sample(hb.bugs, true), sample(ha.bugs, true));
  add("bug_fix_days", "Average bug fixing time", MetricUnit::Days, get<IS>(hb.bugs, days),
      get<IS>(ha.bugs, days))
      ->test = u_test(sample(hb.bugs, false), sample(ha.bugs, false));

  auto dl = [](const DlReport& d) -> std::optional<double> { return 100.0 * d.dl; };
  auto pc = [](const CouplingReport& c) -> std::optional<double> { return 100.0 * c.pc; };
  add("dl", "Decoupling level", MetricUnit::Percent, get<DlReport>(before.dl, dl),
      get<DlReport>(after.dl, dl));
  add("pc", "Propagation cost", MetricUnit::Percent, get<CouplingReport>(before.coupling, pc),
      get<CouplingReport>(after.coupling, pc));

  auto roots = [](const RootSet& s) -> std::optional<double> {
    return static_cast<double>(s.roots.size());
  };
  auto root_files = [](const RootSet& s) -> std::optional<double> {
    return static_cast<double>(s.files_in_roots);
  };
  auto root_share = [](const RootSet& s) -> std::optional<double> {
    return 100.0 * s.files_fraction;
  };
  add("roots", "# of roots covering target of bugs", MetricUnit::Count,
      get<RootSet>(before.roots, roots), get<RootSet>(after.roots, roots));
  add("root_files", "# of files in roots", MetricUnit::Count,
      get<RootSet>(before.roots, root_files), get<RootSet>(after.roots, root_files));
  add("root_file_share", "# of files covering target of bugs", MetricUnit::Percent,
      get<RootSet>(before.roots, root_share), get<RootSet>(after.roots, root_share));

  for (auto kind : kAllFlawKinds) {
    auto count = [kind](const FlawReport& f) -> std::optional<double> {
      return static_cast<double>(f.summary.at(kind).instances);
    };
    auto files = [kind](const FlawReport& f) -> std::optional<double> {
      return static_cast<double>(f.summary.at(kind).influenced_files);
    };
    const std::string noun(report_noun(kind));
    const std::string id(to_string(kind));
    add(id + "_count", "# of " + noun, MetricUnit::Count,
        get<FlawReport>(before.flaws, count), get<FlawReport>(after.flaws, count));
    add(id + "_files", "# of files influenced by " + noun, MetricUnit::Count,
        get<FlawReport>(before.flaws, files), get<FlawReport>(after.flaws, files));
  }
  return r;
}

ComparisonReport compare_snapshots(const Snapshot& before, const Snapshot& after,
                                   const AnalysisOptions& options) {
  return compare_analyses(analyze(before, options), analyze(after, options));
}

}  // namespace adx
