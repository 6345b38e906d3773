#include "adx/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "adx/timeutil.hpp"

namespace adx {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kLabelWidth = 52;

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string pct(double fraction, int precision) {
  return fixed(100.0 * fraction, precision) + "%";
}

// "80%" for whole targets, otherwise with the requested precision.
std::string target_pct(double target, int precision) {
  const double v = 100.0 * target;
  return fixed(v, std::abs(v - std::round(v)) < 1e-9 ? 0 : precision) + "%";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class TextOut {
 public:
  explicit TextOut(const RenderOptions& o) : o_(o) {}

  void heading(std::string_view text) {
    if (!first_) out_ << '\n';
    first_ = false;
    if (o_.color) {
      out_ << "\x1b[1m" << text << "\x1b[0m\n";
    } else {
      out_ << text << '\n';
    }
  }
  void row(std::string_view label, std::string_view value) {
    std::string l = "  " + std::string(label);
    if (l.size() < kLabelWidth) l.resize(kLabelWidth, ' ');
    else l += ' ';
    out_ << l << value << '\n';
  }
  void line(std::string_view text) { out_ << text << '\n'; }
  std::string str() const { return out_.str(); }

 private:
  const RenderOptions& o_;
  std::ostringstream out_;
  bool first_ = true;
};

template <class T>
ordered_json error_json(const Section<T>& s) {
  return {{"error",
           {{"code", s.error_code ? std::string(to_string(*s.error_code)) : "Unknown"},
            {"message", s.error}}}};
}

template <class T>
std::string error_text(const Section<T>& s) {
  return "unavailable (" +
         (s.error_code ? std::string(to_string(*s.error_code)) + ": " : std::string()) +
         s.error + ")";
}

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<std::string> paths(const Snapshot& s, const std::vector<FileId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (auto f : ids) out.push_back(s.file(f).path);
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// ---- JSON builders --------------------------------------------------------

ordered_json coupling_json(const Snapshot& s, const CouplingReport& r, bool with_files) {
  ordered_json j{{"pc", r.pc}, {"nonempty", r.nonempty}, {"cells", r.cells}, {"n", r.n}};
  if (with_files) {
    ordered_json files = ordered_json::array();
    for (std::size_t f = 0; f < r.fans.size(); ++f) {
      const auto& fan = r.fans[f];
      files.push_back({{"path", s.file(static_cast<FileId>(f)).path},
                       {"fan_in", fan.direct_in},
                       {"fan_out", fan.direct_out},
                       {"transitive_fan_in", fan.transitive_in},
                       {"transitive_fan_out", fan.transitive_out}});
    }
    j["files"] = std::move(files);
  }
  return j;
}

ordered_json drh_json(const Snapshot& s, const DrhStructure& drh, bool with_members) {
  ordered_json layers = ordered_json::array();
  for (std::size_t l = 0; l < drh.layers.size(); ++l) {
    ordered_json modules = ordered_json::array();
    for (const auto& m : drh.layers[l]) {
      ordered_json mj{{"id", m.id}, {"size", m.members.size()}};
      if (with_members) mj["members"] = paths(s, m.members);
      modules.push_back(std::move(mj));
    }
    layers.push_back({{"layer", l + 1}, {"modules", std::move(modules)}});
  }
  return {{"layer_count", drh.layers.size()},
          {"module_count", drh.module_count()},
          {"layers", std::move(layers)}};
}

ordered_json dl_json(const Snapshot& s, const DrhStructure* drh, const DlReport& r,
                     bool with_modules) {
  ordered_json j{{"dl", r.dl}, {"n", r.n}, {"module_count", r.modules.size()}};
  if (with_modules) {
    ordered_json modules = ordered_json::array();
    for (const auto& m : r.modules) {
      ordered_json mj{{"module", m.module}};
      if (drh) mj["layer"] = drh->module(m.module).layer;
      mj["size"] = m.size;
      mj["dependents"] = m.dependents;
      mj["independence"] = m.independence;
      mj["size_penalty"] = m.size_penalty;
      mj["contribution"] = m.contribution;
      if (drh) mj["members"] = paths(s, drh->module(m.module).members);
      modules.push_back(std::move(mj));
    }
    j["modules"] = std::move(modules);
  }
  return j;
}

ordered_json instance_json(const Snapshot& s, const FlawInstance& inst) {
  ordered_json evidence = ordered_json::object();
  for (const auto& [k, v] : inst.evidence) evidence[k] = v;
  return {{"kind", to_string(inst.kind)},
          {"anchors", inst.anchor_packages.empty() ? paths(s, inst.anchor_files)
                                                   : inst.anchor_packages},
          {"scope", paths(s, inst.scope)},
          {"evidence", std::move(evidence)}};
}

ordered_json flaws_json(const Snapshot& s, const FlawReport& r) {
  ordered_json summary = ordered_json::object();
  for (auto kind : kAllFlawKinds) {
    const auto& k = r.summary.at(kind);
    summary[std::string(to_string(kind))] = {{"instances", k.instances},
                                             {"influenced_files", k.influenced_files}};
  }
  ordered_json instances = ordered_json::array();
  for (auto kind : kAllFlawKinds) {
    for (const auto& inst : r.of(kind)) instances.push_back(instance_json(s, inst));
  }
  return {{"summary", std::move(summary)},
          {"influenced_files_any", r.influenced_files_any},
          {"instances", std::move(instances)}};
}

ordered_json roots_json(const Snapshot& s, const RootSet& r) {
  ordered_json roots = ordered_json::array();
  for (const auto& p : r.roots) {
    roots.push_back({{"leader", s.file(p.space.leader).path},
                     {"members", p.space.members.size()},
                     {"marginal_weight", p.marginal_weight},
                     {"cumulative_weight", p.cumulative_weight},
                     {"marginal_coverage",
                      static_cast<double>(p.marginal_weight) /
                          static_cast<double>(r.total_weight)},
                     {"cumulative_coverage", p.cumulative_coverage}});
  }
  return {{"target", r.target},
          {"target_reached", r.target_reached},
          {"coverage", r.coverage},
          {"covered_weight", r.covered_weight},
          {"total_weight", r.total_weight},
          {"files_in_roots", r.files_in_roots},
          {"files_fraction", r.files_fraction},
          {"roots", std::move(roots)}};
}

ordered_json churn_json(const ChurnStats& c) {
  ordered_json curve = ordered_json::array();
  for (const auto& [p, frac] : c.concentration) {
    curve.push_back({{"commit_fraction", p}, {"file_fraction", frac}});
  }
  return {{"files_touched", c.files_touched},
          {"never_changed", c.never_changed},
          {"never_changed_fraction", c.never_changed_fraction},
          {"single_contributor", c.single_contributor},
          {"files_with_history", c.files_with_history},
          {"single_contributor_fraction", c.single_contributor_fraction},
          {"concentration", std::move(curve)}};
}

ordered_json overlap_json(const OverlapMatrix& o) {
  ordered_json windows = ordered_json::array();
  for (std::size_t i = 0; i < o.windows.size(); ++i) {
    windows.push_back({{"name", o.window_names[i]}, {"files", o.windows[i].size()}});
  }
  return {{"windows", std::move(windows)},
          {"jaccard", o.jaccard},
          {"min_normalized", o.min_normalized},
          {"mean_nonconsecutive_jaccard", opt_json(o.mean_nonconsecutive_jaccard)},
          {"mean_all_jaccard", opt_json(o.mean_all_jaccard)},
          {"mean_nonconsecutive_min_normalized", opt_json(o.mean_nonconsecutive_min)},
          {"mean_all_min_normalized", opt_json(o.mean_all_min)}};
}

ordered_json issues_json(const IssueStats& st, bool with_samples) {
  ordered_json j{{"opened", st.opened},
                 {"fixed", st.fixed},
                 {"changed_code", st.changed_code},
                 {"mean_churn", opt_json(st.mean_churn)},
                 {"mean_duration_days", opt_json(st.mean_duration_days)},
                 {"mean_files", opt_json(st.mean_files)}};
  if (with_samples) {
    ordered_json samples = ordered_json::array();
    for (const auto& s : st.fixed_samples) {
      samples.push_back({{"key", s.key},
                         {"churn", s.churn},
                         {"duration_days", opt_json(s.duration_days)},
                         {"files", s.files},
                         {"commits", s.commits}});
    }
    j["samples"] = std::move(samples);
  }
  return j;
}

template <class T, class F>
ordered_json section_json(const Section<T>& s, F&& f) {
  return s.value ? f(*s.value) : error_json(s);
}

ordered_json history_json(const HistoryMetrics& h, bool with_samples) {
  return {
      {"churn", section_json(h.churn, [](const auto& v) { return churn_json(v); })},
      {"overlap", section_json(h.overlap, [](const auto& v) { return overlap_json(v); })},
      {"issues", section_json(h.issues,
                              [&](const auto& v) { return issues_json(v, with_samples); })},
      {"bugs",
       section_json(h.bugs, [&](const auto& v) { return issues_json(v, with_samples); })}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- text pieces ----------------------------------------------------------

void flaw_rows(TextOut& t, const FlawReport& r) {
  for (auto kind : kAllFlawKinds) {
    const auto& k = r.summary.at(kind);
    const std::string noun(report_noun(kind));
    t.row("# of " + noun, std::to_string(k.instances));
    t.row("# of files influenced by " + noun, std::to_string(k.influenced_files));
  }
  t.row("# of files influenced by any flaw", std::to_string(r.influenced_files_any));
}

std::string opt_fixed(const std::optional<double>& v, int precision,
                      std::string_view suffix = "") {
  return v ? fixed(*v, precision) + std::string(suffix) : std::string("n/a");
}

void history_rows(TextOut& t, const HistoryMetrics& h, const RenderOptions& o) {
  t.heading("History");
  if (h.churn.value) {
    const auto& c = *h.churn.value;
    t.row("# of files touched by history", std::to_string(c.files_touched));
    t.row("Files never changed after creation", pct(c.never_changed_fraction, o.precision));
    t.row("Files with a single contributor", pct(c.single_contributor_fraction, o.precision));
    for (const auto& [p, frac] : c.concentration) {
      t.row("Files touched by top " + target_pct(p, o.precision) + " commits by churn",
            pct(frac, o.precision));
    }
  } else {
    t.row("Churn statistics", error_text(h.churn));
  }
  if (h.overlap.value) {
    const auto& ov = *h.overlap.value;
    auto m = [&](const std::optional<double>& v) {
      return v ? pct(*v, o.precision) : std::string("n/a");
    };
    t.row("# of release windows", std::to_string(ov.windows.size()));
    t.row("Release overlap, non-consecutive (Jaccard)", m(ov.mean_nonconsecutive_jaccard));
    t.row("Release overlap, all pairs (Jaccard)", m(ov.mean_all_jaccard));
    t.row("Release overlap, non-consecutive (min)", m(ov.mean_nonconsecutive_min));
    t.row("Release overlap, all pairs (min)", m(ov.mean_all_min));
  } else {
    t.row("Release overlap", error_text(h.overlap));
  }
  auto issue_rows = [&](const Section<IssueStats>& s, std::string_view noun) {
    const std::string n(noun);
    if (!s.value) {
      t.row(n + " statistics", error_text(s));
      return;
    }
    const auto& v = *s.value;
    t.row("# of " + n + "s opened", std::to_string(v.opened));
    t.row("# of " + n + "s fixed", std::to_string(v.fixed));
    t.row("# of " + n + "s that changed code", std::to_string(v.changed_code));
    t.row("Amount of churn per " + n, opt_fixed(v.mean_churn, o.precision));
    t.row("Average " + n + " fixing time", opt_fixed(v.mean_duration_days, o.day_precision, " days"));
  };
  issue_rows(h.issues, "issue");
  issue_rows(h.bugs, "bug");
}

std::string value_text(const MetricComparison& m, const std::optional<double>& v,
                       const RenderOptions& o) {
  if (!v) return "n/a";
  switch (m.unit) {
    case MetricUnit::Count:
      return std::abs(*v - std::round(*v)) < 1e-9 ? fixed(*v, 0) : fixed(*v, o.precision);
    case MetricUnit::Percent:
      return fixed(*v, o.precision) + "%";
    case MetricUnit::Days:
      return fixed(*v, o.day_precision);
    case MetricUnit::Lines:
      return fixed(*v, o.precision);
  }
  return "n/a";
}

std::string_view unit_name(MetricUnit u) {
  switch (u) {
    case MetricUnit::Count: return "count";
    case MetricUnit::Percent: return "percent";
    case MetricUnit::Days: return "days";
    case MetricUnit::Lines: return "lines";
  }
  return "count";
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Format> parse_format(std::string_view text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  return std::nullopt;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", std::max(0, decimals), value);
  std::string s(buf);
  // Avoid "-0.0".
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_coupling(const Snapshot& snapshot, const CouplingReport& r,
                            const RenderOptions& o) {
  if (o.format == Format::Json) return dump(coupling_json(snapshot, r, true));
  if (o.format == Format::Csv) {
    std::string out = "path,fan_in,fan_out,transitive_fan_in,transitive_fan_out\n";
    for (std::size_t f = 0; f < r.fans.size(); ++f) {
      const auto& fan = r.fans[f];
      out += csv_field(snapshot.file(static_cast<FileId>(f)).path) + "," +
             std::to_string(fan.direct_in) + "," + std::to_string(fan.direct_out) + "," +
             std::to_string(fan.transitive_in) + "," + std::to_string(fan.transitive_out) +
             "\n";
    }
    return out;
  }
  TextOut t(o);
  t.row("Propagation cost", pct(r.pc, o.precision));
  t.row("Nonempty cells", std::to_string(r.nonempty) + " / " + std::to_string(r.cells));
  t.row("# of files", std::to_string(r.n));
  return t.str();
}

std::string render_drh(const Snapshot& snapshot, const DrhStructure& drh,
                       const RenderOptions& o) {
  if (o.format == Format::Json) return dump(drh_json(snapshot, drh, true));
  if (o.format == Format::Csv) {
    std::string out = "layer,module,path\n";
    for (const auto& layer : drh.layers) {
      for (const auto& m : layer) {
        for (auto f : m.members) {
          out += std::to_string(m.layer) + "," + std::to_string(m.id) + "," +
                 csv_field(snapshot.file(f).path) + "\n";
        }
      }
    }
    return out;
  }
  TextOut t(o);
  for (std::size_t l = 0; l < drh.layers.size(); ++l) {
    const auto& layer = drh.layers[l];
    t.heading("Layer " + std::to_string(l + 1) + " (" + std::to_string(layer.size()) +
              (layer.size() == 1 ? " module)" : " modules)"));
    for (const auto& m : layer) {
      t.line("  M" + std::to_string(m.id) + " [" + std::to_string(m.members.size()) +
             (m.members.size() == 1 ? " file]" : " files]"));
      for (auto f : m.members) t.line("    " + snapshot.file(f).path);
    }
  }
  return t.str();
}

std::string render_dl(const Snapshot& snapshot, const DrhStructure& drh, const DlReport& r,
                      const RenderOptions& o) {
  if (o.format == Format::Json) return dump(dl_json(snapshot, &drh, r, true));
  if (o.format == Format::Csv) {
    std::string out = "module,layer,size,dependents,independence,size_penalty,contribution\n";
    for (const auto& m : r.modules) {
      out += std::to_string(m.module) + "," + std::to_string(drh.module(m.module).layer) +
             "," + std::to_string(m.size) + "," + std::to_string(m.dependents) + "," +
             shortest(m.independence) + "," + shortest(m.size_penalty) + "," +
             shortest(m.contribution) + "\n";
    }
    return out;
  }
  TextOut t(o);
  t.row("Decoupling level", pct(r.dl, o.precision));
  t.row("# of modules", std::to_string(r.modules.size()));
  t.row("# of layers", std::to_string(drh.layers.size()));
  return t.str();
}

std::string render_flaws(const Snapshot& snapshot, const FlawReport& r,
                         const RenderOptions& o) {
  if (o.format == Format::Json) return dump(flaws_json(snapshot, r));
  if (o.format == Format::Csv) {
    std::string out = "kind,instance,anchors,scope_size,scope\n";
    for (auto kind : kAllFlawKinds) {
      std::size_t i = 0;
      for (const auto& inst : r.of(kind)) {
        const auto anchors = inst.anchor_packages.empty()
                                 ? paths(snapshot, inst.anchor_files)
                                 : inst.anchor_packages;
        out += std::string(to_string(kind)) + "," + std::to_string(++i) + "," +
               csv_field(join(anchors, ";")) + "," + std::to_string(inst.scope.size()) + "," +
               csv_field(join(paths(snapshot, inst.scope), ";")) + "\n";
      }
    }
    return out;
  }
  TextOut t(o);
  t.heading("Architectural flaws");
  flaw_rows(t, r);
  for (auto kind : kAllFlawKinds) {
    std::size_t i = 0;
    for (const auto& inst : r.of(kind)) {
      t.heading(std::string(to_string(kind)) + " #" + std::to_string(++i) + " (scope " +
                std::to_string(inst.scope.size()) + ")");
      const auto anchors = inst.anchor_packages.empty() ? paths(snapshot, inst.anchor_files)
                                                        : inst.anchor_packages;
      t.line("  anchors: " + join(anchors, ", "));
      std::vector<std::string> ev;
      for (const auto& [k, v] : inst.evidence) ev.push_back(k + "=" + std::to_string(v));
      t.line("  evidence: " + join(ev, " "));
      for (auto f : inst.scope) t.line("    " + snapshot.file(f).path);
    }
  }
  return t.str();
}

std::string render_roots(const Snapshot& snapshot, const RootSet& r, const RenderOptions& o) {
  if (o.format == Format::Json) return dump(roots_json(snapshot, r));
  if (o.format == Format::Csv) {
    std::string out = "rank,leader,members,marginal_weight,cumulative_weight,cumulative_coverage\n";
    std::size_t i = 0;
    for (const auto& p : r.roots) {
      out += std::to_string(++i) + "," + csv_field(snapshot.file(p.space.leader).path) + "," +
             std::to_string(p.space.members.size()) + "," + std::to_string(p.marginal_weight) +
             "," + std::to_string(p.cumulative_weight) + "," + shortest(p.cumulative_coverage) +
             "\n";
    }
    return out;
  }
  TextOut t(o);
  const auto tp = target_pct(r.target, o.precision);
  t.row("# of roots covering " + tp + " of bugs", std::to_string(r.roots.size()));
  t.row("# of files in roots covering " + tp + " of bugs", std::to_string(r.files_in_roots));
  t.row("# of files covering " + tp + " of bugs", pct(r.files_fraction, o.precision));
  t.row("Bug weight covered",
        pct(r.coverage, o.precision) + " (" + std::to_string(r.covered_weight) + "/" +
            std::to_string(r.total_weight) + ")" +
            (r.target_reached ? "" : " TargetUnreachable"));
  std::size_t i = 0;
  for (const auto& p : r.roots) {
    t.line("  " + std::to_string(++i) + ". " + snapshot.file(p.space.leader).path + "  members=" +
           std::to_string(p.space.members.size()) + " +" + std::to_string(p.marginal_weight) +
           " cumulative=" + pct(p.cumulative_coverage, o.precision));
  }
  return t.str();
}

std::string render_metrics(const Snapshot& snapshot, const HistoryMetrics& h,
                           const RenderOptions& o) {
  if (o.format == Format::Json) return dump(history_json(h, true));
  if (o.format == Format::Csv) {
    std::string out = "path,churn\n";
    if (h.churn.value) {
      for (std::size_t f = 0; f < h.churn.value->file_churn.size(); ++f) {
        out += csv_field(snapshot.file(static_cast<FileId>(f)).path) + "," +
               std::to_string(h.churn.value->file_churn[f]) + "\n";
      }
    }
    return out;
  }
  TextOut t(o);
  history_rows(t, h, o);
  return t.str();
}

nlohmann::ordered_json analysis_json(const Snapshot& snapshot, const Analysis& a) {
  const DrhStructure* drh = a.drh.value ? &*a.drh.value : nullptr;
  return {
      {"schema_version", kSchemaVersion},
      {"label", a.label},
      {"general",
       {{"files", a.files},
        {"commits", a.commits},
        {"issues", a.issue_count},
        {"total_churn", a.total_churn}}},
      {"coupling",
       section_json(a.coupling, [&](const auto& v) { return coupling_json(snapshot, v, false); })},
      {"drh", section_json(a.drh, [&](const auto& v) { return drh_json(snapshot, v, false); })},
      {"dl", section_json(a.dl, [&](const auto& v) { return dl_json(snapshot, drh, v, false); })},
      {"flaws", section_json(a.flaws, [&](const auto& v) { return flaws_json(snapshot, v); })},
      {"roots", section_json(a.roots, [&](const auto& v) { return roots_json(snapshot, v); })},
      {"history", history_json(a.history, false)}};
}

std::string render_analysis(const Snapshot& snapshot, const Analysis& a,
                            const RenderOptions& o) {
  if (o.format == Format::Json) return dump(analysis_json(snapshot, a));
  if (o.format == Format::Csv) {
    // Section,metric,value rows of the text report.
    std::string out = "section,metric,value\n";
    auto add = [&](std::string_view sec, std::string_view metric, const std::string& v) {
      out += std::string(sec) + "," + csv_field(metric) + "," + csv_field(v) + "\n";
    };
    add("general", "files", std::to_string(a.files));
    add("general", "commits", std::to_string(a.commits));
    add("general", "issues", std::to_string(a.issue_count));
    add("general", "total_churn", std::to_string(a.total_churn));
    if (a.roots.value) {
      add("general", "roots", std::to_string(a.roots.value->roots.size()));
      add("general", "files_in_roots", std::to_string(a.roots.value->files_in_roots));
      add("general", "files_fraction", shortest(a.roots.value->files_fraction));
    }
    if (a.dl.value) add("metrics", "dl", shortest(a.dl.value->dl));
    if (a.coupling.value) add("metrics", "pc", shortest(a.coupling.value->pc));
    if (a.flaws.value) {
      for (auto kind : kAllFlawKinds) {
        const auto& k = a.flaws.value->summary.at(kind);
        add("flaws", std::string(to_string(kind)) + "_count", std::to_string(k.instances));
        add("flaws", std::string(to_string(kind)) + "_files",
            std::to_string(k.influenced_files));
      }
    }
    return out;
  }

  TextOut t(o);
  t.heading("Architecture analysis: " + a.label);
  t.heading("General information");
  t.row("# of files", std::to_string(a.files));
  t.row("# of commits", std::to_string(a.commits));
  t.row("# of issues", std::to_string(a.issue_count));
  t.row("Total churn", std::to_string(a.total_churn));
  const auto tp = target_pct(a.root_target, o.precision);
  if (a.roots.value) {
    const auto& r = *a.roots.value;
    t.row("# of roots covering " + tp + " of bugs",
          std::to_string(r.roots.size()) + (r.target_reached ? "" : " (TargetUnreachable)"));
    t.row("# of files in roots covering " + tp + " of bugs", std::to_string(r.files_in_roots));
    t.row("# of files covering " + tp + " of bugs", pct(r.files_fraction, o.precision));
  } else {
    t.row("# of roots covering " + tp + " of bugs", error_text(a.roots));
  }

  t.heading("Architectural Metrics");
  t.row("Decoupling level", a.dl.value ? pct(a.dl.value->dl, o.precision) : error_text(a.dl));
  t.row("Propagation cost",
        a.coupling.value ? pct(a.coupling.value->pc, o.precision) : error_text(a.coupling));
  if (a.drh.value) {
    t.row("# of DRH layers", std::to_string(a.drh.value->layers.size()));
    t.row("# of DRH modules", std::to_string(a.drh.value->module_count()));
  } else {
    t.row("Design rule hierarchy", error_text(a.drh));
  }

  t.heading("Architectural flaws");
  if (a.flaws.value) {
    flaw_rows(t, *a.flaws.value);
  } else {
    t.row("Flaw detection", error_text(a.flaws));
  }

  history_rows(t, a.history, o);
  return t.str();
}

nlohmann::ordered_json comparison_json(const ComparisonReport& r) {
  ordered_json metrics = ordered_json::array();
  for (const auto& m : r.metrics) {
    ordered_json test = nullptr;
    if (m.test) {
      test = {{"u", m.test->u},
              {"p_value", m.test->p_value},
              {"n_before", m.test->n_a},
              {"n_after", m.test->n_b},
              {"method", to_string(m.test->method)}};
    }
    metrics.push_back({{"metric", m.id},
                       {"label", m.label},
                       {"unit", unit_name(m.unit)},
                       {"before", opt_json(m.before)},
                       {"after", opt_json(m.after)},
                       {"delta", opt_json(m.delta)},
                       {"percent", opt_json(m.percent)},
                       {"test", std::move(test)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"before", r.before_label},
          {"after", r.after_label},
          {"metrics", std::move(metrics)}};
}

std::string render_comparison(const ComparisonReport& r, const RenderOptions& o) {
  if (o.format == Format::Json) return dump(comparison_json(r));
  if (o.format == Format::Csv) {
    std::string out = "metric,before,after,delta,percent,p_value\n";
    auto v = [](const std::optional<double>& x) { return x ? shortest(*x) : std::string(); };
    for (const auto& m : r.metrics) {
      out += m.id + "," + v(m.before) + "," + v(m.after) + "," + v(m.delta) + "," +
             v(m.percent) + "," + (m.test ? shortest(m.test->p_value) : std::string()) + "\n";
    }
    return out;
  }
  TextOut t(o);
  t.heading("Comparison: " + r.before_label + " → " + r.after_label);
  for (const auto& m : r.metrics) {
    std::string text = value_text(m, m.before, o) + " → " + value_text(m, m.after, o);
    if (m.delta) {
      text += " (" + std::string(*m.delta > 0 ? "+" : "") + value_text(m, m.delta, o);
      if (m.percent) {
        text += ", " + std::string(*m.percent > 0 ? "+" : "") + fixed(*m.percent, o.precision) + "%";
      }
      text += ")";
    }
    if (m.test) {
      text += "  p=" + fixed(m.test->p_value, 3) + " (" +
              std::string(to_string(m.test->method)) + ")";
    }
    t.row(m.label, text);
  }
  return t.str();
}

DsmExport export_dsm(const Snapshot& snapshot, std::span<const FileId> subset,
                     const CoChangeMatrix& cochange) {
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "empty DSM file subset");
  std::set<FileId> wanted;
  for (auto f : subset) {
    if (f >= snapshot.size()) {
      throw Error(ErrorCode::UnknownFile, "unknown file id " + std::to_string(f));
    }
    wanted.insert(f);
  }
  const auto drh = build_drh(snapshot.graph());
  DsmExport dsm;
  for (auto f : drh.file_order()) {
    if (wanted.contains(f)) dsm.order.push_back(f);
  }
  const std::size_t k = dsm.order.size();
  dsm.cells.assign(k, std::vector<std::string>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto f = dsm.order[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) {
        dsm.cells[i][j] = "(" + std::to_string(i + 1) + ")";
        continue;
      }
      const auto g = dsm.order[j];
      std::set<DependencyKind> kinds;
      for (const auto& e : snapshot.graph().edges_from(f)) {
        if (e.target == g) kinds.insert(e.kind);
      }
      std::string cell;
      for (auto kd : kinds) cell += abbreviation(kd);
      const auto count = f < cochange.size() ? cochange.count(f, g) : 0;
      if (count > 0) cell += ";" + std::to_string(count);
      dsm.cells[i][j] = std::move(cell);
    }
  }
  return dsm;
}

std::string render_dsm_csv(const Snapshot& snapshot, const DsmExport& dsm) {
  std::string out;
  for (std::size_t j = 0; j < dsm.order.size(); ++j) out += "," + std::to_string(j + 1);
  out += "\n";
  for (std::size_t i = 0; i < dsm.order.size(); ++i) {
    out += csv_field(std::to_string(i + 1) + " " + snapshot.file(dsm.order[i]).path);
    for (const auto& cell : dsm.cells[i]) out += "," + csv_field(cell);
    out += "\n";
  }
  return out;
}

}  // namespace adx
