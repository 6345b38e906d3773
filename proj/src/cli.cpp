#include "adx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "adx/analysis.hpp"
#include "adx/cochange.hpp"
#include "adx/compare.hpp"
#include "adx/ingest.hpp"
#include "adx/report.hpp"

namespace adx {
namespace {

struct GlobalOptions {
  std::string format = "text";
  std::string thresholds_file;
  int precision = 1;
  bool color = false;
};

struct AnalysisFlags {
  std::string window;
  double target = 0.8;
  std::size_t max_candidates = 100;
  std::string direction = "up";
  bool transitive = false;
  std::size_t max_commit_size = 0;  // 0 = no cap
};

// An input error tied to one file, reported as `file:line: message`.
struct InputError {
  std::string file;
  Error error;
};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

template <class F>
auto parse_file(const std::string& path, F&& parse) -> decltype(parse(std::string_view{})) {
  const auto text = read_text_file(path);
  try {
    return parse(std::string_view(text));
  } catch (const Error& e) {
    throw InputError{path, e};
  }
}

// Issue, release and file lists may be empty files.
template <class F>
auto parse_optional_file(const std::string& path, F&& parse)
    -> decltype(parse(std::string_view{})) {
  if (path.empty()) return {};
  const auto text = read_text_file(path);
  if (blank(text)) return {};
  try {
    return parse(std::string_view(text));
  } catch (const Error& e) {
    throw InputError{path, e};
  }
}

RenderOptions render_options(const GlobalOptions& g) {
  RenderOptions o;
  auto f = parse_format(g.format);
  if (!f) throw Error(ErrorCode::InvalidArgument, "unknown format `" + g.format + "`");
  if (g.precision < 0) throw Error(ErrorCode::InvalidArgument, "precision must be >= 0");
  o.format = *f;
  o.precision = g.precision;
  o.day_precision = std::max(2, g.precision);
  o.color = g.color;
  return o;
}

Thresholds load_thresholds(const GlobalOptions& g) {
  std::string path = g.thresholds_file;
  if (path.empty()) {
    if (const char* env = std::getenv("ADX_THRESHOLDS"); env && *env) path = env;
  }
  if (path.empty()) return {};
  return parse_file(path, [](std::string_view t) { return parse_thresholds(t); });
}

AnalysisOptions analysis_options(const GlobalOptions& g, const AnalysisFlags& f) {
  AnalysisOptions o;
  o.thresholds = load_thresholds(g);
  if (f.transitive) o.thresholds.transitive_modularity = true;
  o.roots.target = f.target;
  o.roots.max_candidates = f.max_candidates;
  if (f.direction == "up") {
    o.roots.direction = SpaceDirection::Up;
  } else if (f.direction == "down") {
    o.roots.direction = SpaceDirection::Down;
  } else {
    throw Error(ErrorCode::InvalidArgument, "direction must be `up` or `down`");
  }
  if (f.max_commit_size == 1) {
    throw Error(ErrorCode::InvalidArgument, "max commit size must be at least 2");
  }
  if (f.max_commit_size > 0) o.max_commit_size = f.max_commit_size;
  if (!f.window.empty()) o.window = parse_time_window(f.window);
  return o;
}

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f, bool roots, bool flaws,
                        bool history) {
  if (roots) {
    cmd->add_option("--target", f.target, "Bug coverage target for roots")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-candidates", f.max_candidates, "Root candidates considered");
    cmd->add_option("--direction", f.direction, "DRSpace direction: up or down");
  }
  if (flaws) {
    cmd->add_flag("--transitive", f.transitive,
                  "Excuse transitively dependent pairs from modularity violations");
    cmd->add_option("--max-commit-size", f.max_commit_size,
                    "Ignore commits touching more files when counting co-change");
  }
  if (history) {
    cmd->add_option("--window", f.window, "Time window FROM..TO (ISO-8601, either side open)");
  }
}

std::vector<FileId> resolve_files(const Snapshot& s, const std::vector<std::string>& names) {
  std::vector<FileId> out;
  for (const auto& name : names) {
    auto id = s.find(name);
    if (!id) throw Error(ErrorCode::UnknownFile, "unknown file `" + name + "`");
    out.push_back(*id);
  }
  return out;
}

// `kind` or `kind:index` (1-based) naming one flaw instance.
std::vector<FileId> flaw_scope(const Snapshot& s, const std::string& spec,
                               const AnalysisOptions& options) {
  const auto colon = spec.find(':');
  const auto kind = parse_flaw_kind(spec.substr(0, colon));
  if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown flaw kind `" + spec + "`");
  std::size_t index = 1;
  if (colon != std::string::npos) {
    try {
      index = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad flaw index in `" + spec + "`");
    }
  }
  const auto cochange = cochange_matrix(s, options.max_commit_size);
  const auto report =
      flaw_report(s, options.thresholds, transitive_closure(s.graph()), cochange);
  const auto& list = report.of(*kind);
  if (index == 0 || index > list.size()) {
    throw Error(ErrorCode::InvalidArgument, "no " + std::string(to_string(*kind)) +
                                                " instance #" + std::to_string(index));
  }
  return list[index - 1].scope;
}

int cmd_ingest(const std::string& deps, const std::string& history, const std::string& issues,
               const std::string& releases, const std::string& files, const std::string& label,
               const std::string& pattern, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const auto dep_records = parse_file(deps, [](auto t) { return parse_deps(t); });
  auto commits = parse_file(history, [](auto t) { return parse_gitlog(t); });
  const auto issue_list = parse_optional_file(issues, [](auto t) { return parse_issues(t); });
  const auto release_list =
      parse_optional_file(releases, [](auto t) { return parse_releases(t); });
  auto file_list = parse_optional_file(files, [](auto t) { return parse_files(t); });

  std::set<std::string> unknown_kinds;
  for (const auto& r : dep_records) {
    if (!parse_dependency_kind(r.kind)) unknown_kinds.insert(r.kind);
  }
  for (const auto& k : unknown_kinds) {
    err << "warning: unknown dependency kind `" << k << "` mapped to Other\n";
  }

  // Files named by the dependency list are declared even without a file list.
  {
    std::set<std::string> declared;
    for (const auto& f : file_list) declared.insert(f.path);
    for (auto& f : files_from_dependencies(dep_records)) {
      if (!declared.contains(f.path)) file_list.push_back(std::move(f));
    }
  }

  LinkRule rule;
  if (!pattern.empty()) rule.pattern = pattern;
  const auto link = link_commits(commits, issue_list, rule);
  if (!link.unmatched.empty()) {
    err << "warning: " << link.unmatched.size() << " unmatched issue reference"
        << (link.unmatched.size() == 1 ? "" : "s") << "\n";
  }

  const auto snapshot =
      build_snapshot(file_list, dep_records, commits, issue_list, release_list, label);
  save_snapshot(snapshot, out_path);

  const auto rate = commits.empty() ? 0.0
                                    : 100.0 * static_cast<double>(link.linked_commits) /
                                          static_cast<double>(commits.size());
  out << "files=" << snapshot.size() << " commits=" << snapshot.commits().size()
      << " issues=" << snapshot.issues().size()
      << " linked=" << static_cast<long long>(std::llround(rate)) << "%\n";
  return kExitOk;
}

template <class T>
int require(const Section<T>& s, std::ostream& err) {
  if (s.value) return kExitOk;
  err << "error: " << (s.error_code ? to_string(*s.error_code) : "Unknown") << ": " << s.error
      << "\n";
  return kExitAnalysisError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Architecture debt analysis over dependency and revision history", "adx"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--thresholds", g.thresholds_file,
                 "Flaw threshold file (key=value); falls back to $ADX_THRESHOLDS");
  app.add_option("--precision", g.precision, "Decimals for percentages");
  app.add_flag("--color", g.color, "Bold section headings");

  AnalysisFlags flags;
  std::string snapshot_path;

  // ingest
  std::string deps, history, issues, releases, files, label = "snapshot", pattern, out_path;
  auto* ingest = app.add_subcommand("ingest", "Build a snapshot from input files");
  ingest->add_option("--deps", deps, "Dependency list (CSV or JSON)")->required();
  ingest->add_option("--history", history, "git log --numstat output")->required();
  ingest->add_option("--issues", issues, "Issue export (CSV or JSON)")->required();
  ingest->add_option("--releases", releases, "Releases (CSV or JSON)");
  ingest->add_option("--files", files, "File list with explicit packages (CSV or JSON)");
  ingest->add_option("--label", label, "Snapshot label");
  ingest->add_option("--issue-key-pattern", pattern, "Regex for issue keys in messages");
  ingest->add_option("--out", out_path, "Snapshot file to write")->required();

  auto snapshot_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("snapshot", snapshot_path, "Snapshot file")->required();
    return c;
  };
  auto* analyze_cmd = snapshot_cmd("analyze", "Full architecture and history report");
  add_analysis_flags(analyze_cmd, flags, true, true, true);
  auto* pc_cmd = snapshot_cmd("pc", "Propagation cost");
  auto* dl_cmd = snapshot_cmd("dl", "Decoupling level");
  auto* drh_cmd = snapshot_cmd("drh", "Design rule hierarchy");
  auto* flaws_cmd = snapshot_cmd("flaws", "Architecture flaws");
  add_analysis_flags(flaws_cmd, flags, false, true, false);
  auto* roots_cmd = snapshot_cmd("roots", "Architecture roots");
  add_analysis_flags(roots_cmd, flags, true, false, false);
  auto* metrics_cmd = snapshot_cmd("metrics", "History metrics");
  add_analysis_flags(metrics_cmd, flags, false, false, true);

  std::string before_path, after_path;
  auto* compare_cmd = app.add_subcommand("compare", "Before/after comparison");
  compare_cmd->add_option("before", before_path, "Snapshot before")->required();
  compare_cmd->add_option("after", after_path, "Snapshot after")->required();
  add_analysis_flags(compare_cmd, flags, true, true, true);

  std::vector<std::string> dsm_files;
  std::string dsm_flaw;
  auto* dsm_cmd = snapshot_cmd("dsm", "DSM export (CSV) of a file subset");
  dsm_cmd->add_option("--file", dsm_files, "File path to include (repeatable)");
  dsm_cmd->add_option("--flaw", dsm_flaw, "Scope of flaw instance KIND[:INDEX]");
  add_analysis_flags(dsm_cmd, flags, false, true, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    const auto opts = render_options(g);
    if (ingest->parsed()) {
      return cmd_ingest(deps, history, issues, releases, files, label, pattern, out_path, out,
                        err);
    }
    const auto options = analysis_options(g, flags);
    if (compare_cmd->parsed()) {
      const auto before = load_snapshot(before_path);
      const auto after = load_snapshot(after_path);
      out << render_comparison(compare_snapshots(before, after, options), opts);
      return kExitOk;
    }

    const auto snapshot = load_snapshot(snapshot_path);
    if (analyze_cmd->parsed()) {
      out << render_analysis(snapshot, analyze(snapshot, options), opts);
      return kExitOk;
    }
    if (pc_cmd->parsed()) {
      auto s = capture<CouplingReport>([&] { return propagation_cost(snapshot.graph()); });
      if (int rc = require(s, err)) return rc;
      out << render_coupling(snapshot, *s.value, opts);
      return kExitOk;
    }
    if (dl_cmd->parsed()) {
      const auto drh = build_drh(snapshot.graph());
      auto s = capture<DlReport>([&] {
        return decoupling_level(transitive_closure(snapshot.graph()), drh.module_of);
      });
      if (int rc = require(s, err)) return rc;
      out << render_dl(snapshot, drh, *s.value, opts);
      return kExitOk;
    }
    if (drh_cmd->parsed()) {
      out << render_drh(snapshot, build_drh(snapshot.graph()), opts);
      return kExitOk;
    }
    if (flaws_cmd->parsed()) {
      const auto cochange = cochange_matrix(snapshot, options.max_commit_size);
      const auto report = flaw_report(snapshot, options.thresholds,
                                      transitive_closure(snapshot.graph()), cochange);
      out << render_flaws(snapshot, report, opts);
      return kExitOk;
    }
    if (roots_cmd->parsed()) {
      auto s = capture<RootSet>([&] { return detect_roots(snapshot, options.roots); });
      if (int rc = require(s, err)) return rc;
      out << render_roots(snapshot, *s.value, opts);
      return kExitOk;
    }
    if (metrics_cmd->parsed()) {
      out << render_metrics(snapshot, history_metrics(snapshot, options.window), opts);
      return kExitOk;
    }
    if (dsm_cmd->parsed()) {
      std::vector<FileId> subset;
      if (!dsm_flaw.empty()) {
        subset = flaw_scope(snapshot, dsm_flaw, options);
      } else if (!dsm_files.empty()) {
        subset = resolve_files(snapshot, dsm_files);
      } else {
        for (std::size_t f = 0; f < snapshot.size(); ++f) subset.push_back(static_cast<FileId>(f));
      }
      const auto cochange = cochange_matrix(snapshot, options.max_commit_size);
      out << render_dsm_csv(snapshot, export_dsm(snapshot, subset, cochange));
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << e.file;
    if (e.error.line()) err << ":" << *e.error.line();
    err << ": " << to_string(e.error.code()) << ": " << e.error.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.is_parse_error() ? kExitUsageError : kExitAnalysisError;
  }
  return kExitUsageError;
}

}  // namespace adx
