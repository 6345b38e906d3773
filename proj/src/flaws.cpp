#include "adx/flaws.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "adx/components.hpp"
#include "adx/error.hpp"

namespace adx {
namespace {

std::vector<FileId> sorted_unique(std::vector<FileId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Union-find over file ids for inheritance hierarchies.
struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(FlawKind kind) {
  switch (kind) {
    case FlawKind::Clique: return "clique";
    case FlawKind::PackageCycle: return "package_cycle";
    case FlawKind::ImproperInheritance: return "improper_inheritance";
    case FlawKind::ModularityViolation: return "modularity_violation";
    case FlawKind::Crossing: return "crossing";
    case FlawKind::UnstableInterface: return "unstable_interface";
  }
  return "unknown";
}

std::optional<FlawKind> parse_flaw_kind(std::string_view text) {
  for (auto k : kAllFlawKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view report_noun(FlawKind kind) {
  switch (kind) {
    case FlawKind::Clique: return "cliques";
    case FlawKind::PackageCycle: return "package cycles";
    case FlawKind::ImproperInheritance: return "unhealthy inheritance";
    case FlawKind::ModularityViolation: return "modularity violations";
    case FlawKind::Crossing: return "crossings";
    case FlawKind::UnstableInterface: return "unstable interface";
  }
  return "flaws";
}

Thresholds parse_thresholds(std::string_view text) {
  Thresholds t;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::MalformedRow,
                  "thresholds line " + std::to_string(line_no) + ": expected key=value",
                  line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "transitive_modularity") {
      if (value == "true" || value == "1") {
        t.transitive_modularity = true;
      } else if (value == "false" || value == "0") {
        t.transitive_modularity = false;
      } else {
        throw Error(ErrorCode::MalformedRow,
                    "thresholds line " + std::to_string(line_no) + ": expected true/false",
                    line_no);
      }
      continue;
    }
    std::uint32_t number = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), number);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size() || number < 1) {
      throw Error(ErrorCode::MalformedRow,
                  "thresholds line " + std::to_string(line_no) + ": `" +
                      std::string(key) + "` must be an integer >= 1",
                  line_no);
    }
    if (key == "cochange_min") {
      t.cochange_min = number;
    } else if (key == "unstable_partner_min") {
      t.unstable_partner_min = number;
    } else if (key == "crossing_fanin_min") {
      t.crossing_fanin_min = number;
    } else if (key == "crossing_fanout_min") {
      t.crossing_fanout_min = number;
    } else if (key == "unstable_influence_min") {
      t.unstable_influence_min = number;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "thresholds line " + std::to_string(line_no) + ": unknown key `" +
                      std::string(key) + "`",
                  line_no);
    }
  }
  return t;
}

std::string write_thresholds(const Thresholds& t) {
  return "cochange_min=" + std::to_string(t.cochange_min) +
         "\nunstable_partner_min=" + std::to_string(t.unstable_partner_min) +
         "\ncrossing_fanin_min=" + std::to_string(t.crossing_fanin_min) +
         "\ncrossing_fanout_min=" + std::to_string(t.crossing_fanout_min) +
         "\nunstable_influence_min=" + std::to_string(t.unstable_influence_min) +
         "\ntransitive_modularity=" + (t.transitive_modularity ? "true" : "false") + "\n";
}

// ---------------------------------------------------------------------------

std::vector<FlawInstance> detect_cliques(const DependencyGraph& graph) {
  const auto comps = strongly_connected_components(graph.successor_lists());
  std::vector<FlawInstance> out;
  for (const auto& members : comps.members) {
    if (members.size() < 2) continue;
    std::int64_t internal = 0;
    for (auto f : members) {
      for (auto g : graph.successors(f)) {
        if (std::binary_search(members.begin(), members.end(), g)) ++internal;
      }
    }
    FlawInstance inst;
    inst.kind = FlawKind::Clique;
    inst.anchor_files = members;
    inst.scope = members;
    inst.evidence = {{"files", static_cast<std::int64_t>(members.size())},
                     {"internal_dependencies", internal}};
    out.push_back(std::move(inst));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.scope.size() != b.scope.size()) return a.scope.size() > b.scope.size();
    return a.anchor_files < b.anchor_files;
  });
  return out;
}

std::vector<FlawInstance> detect_package_cycles(const DependencyGraph& graph,
                                                const std::vector<FileNode>& files) {
  std::map<std::string, std::uint32_t> package_ids;
  for (const auto& f : files) package_ids.emplace(f.package, 0);
  std::vector<std::string> names;
  for (auto& [name, id] : package_ids) {
    id = static_cast<std::uint32_t>(names.size());
    names.push_back(name);
  }
  std::vector<std::uint32_t> package_of(files.size());
  for (const auto& f : files) package_of[f.id] = package_ids.at(f.package);

  std::vector<std::vector<std::uint32_t>> package_succ(names.size());
  for (const auto& e : graph.edges()) {
    const auto p = package_of[e.source];
    const auto q = package_of[e.target];
    if (p != q) package_succ[p].push_back(q);
  }
  for (auto& s : package_succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  const auto comps = strongly_connected_components(package_succ);

  std::vector<FlawInstance> out;
  for (std::uint32_t c = 0; c < comps.members.size(); ++c) {
    const auto& pkgs = comps.members[c];
    if (pkgs.size() < 2) continue;
    std::vector<FileId> scope;
    std::int64_t crossing_edges = 0;
    for (std::size_t f = 0; f < graph.size(); ++f) {
      const auto p = package_of[f];
      if (comps.component_of[p] != c) continue;
      for (auto g : graph.successors(static_cast<FileId>(f))) {
        const auto q = package_of[g];
        if (q != p && comps.component_of[q] == c) {
          scope.push_back(static_cast<FileId>(f));
          scope.push_back(g);
          ++crossing_edges;
        }
      }
    }
    FlawInstance inst;
    inst.kind = FlawKind::PackageCycle;
    for (auto p : pkgs) inst.anchor_packages.push_back(names[p]);
    inst.scope = sorted_unique(std::move(scope));
    inst.evidence = {{"packages", static_cast<std::int64_t>(pkgs.size())},
                     {"crossing_dependencies", crossing_edges}};
    out.push_back(std::move(inst));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.anchor_packages.size() != b.anchor_packages.size())
      return a.anchor_packages.size() > b.anchor_packages.size();
    return a.anchor_packages < b.anchor_packages;
  });
  return out;
}

std::vector<FlawInstance> detect_improper_inheritance(const DependencyGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::vector<FileId>> children(n);
  DisjointSets hierarchy(n);
  bool any = false;
  for (const auto& e : graph.edges()) {
    if (!is_inheritance(e.kind)) continue;
    children[e.target].push_back(e.source);
    hierarchy.unite(e.source, e.target);
    any = true;
  }
  std::vector<FlawInstance> out;
  if (!any) return out;

  std::vector<char> seen(n, 0);
  std::vector<FileId> descendants;
  std::vector<FileId> stack;
  for (std::size_t p = 0; p < n; ++p) {
    if (children[p].empty()) continue;
    const auto parent = static_cast<FileId>(p);

    descendants.clear();
    stack.assign(children[p].begin(), children[p].end());
    while (!stack.empty()) {
      const FileId c = stack.back();
      stack.pop_back();
      if (seen[c] || c == parent) continue;
      seen[c] = 1;
      descendants.push_back(c);
      for (auto cc : children[c]) stack.push_back(cc);
    }
    std::sort(descendants.begin(), descendants.end());

    // Case 1: the parent depends on one of its descendants.
    for (auto c : descendants) {
      if (!graph.has_plain_edge(parent, c)) continue;
      FlawInstance inst;
      inst.kind = FlawKind::ImproperInheritance;
      inst.inheritance_case = 1;
      inst.anchor_files = sorted_unique({parent, c});
      inst.scope = inst.anchor_files;
      inst.evidence = {{"case", 1}, {"parent", parent}, {"child", c}};
      out.push_back(std::move(inst));
    }

    // Case 2: a client outside the hierarchy uses the parent and a descendant.
    const auto root = hierarchy.find(parent);
    for (auto client : graph.predecessors(parent)) {
      if (hierarchy.find(client) == root) continue;
      if (!graph.has_plain_edge(client, parent)) continue;
      std::vector<FileId> used;
      for (auto c : graph.successors(client)) {
        if (seen[c] && graph.has_plain_edge(client, c)) used.push_back(c);
      }
      if (used.empty()) continue;
      FlawInstance inst;
      inst.kind = FlawKind::ImproperInheritance;
      inst.inheritance_case = 2;
      inst.anchor_files = sorted_unique({client, parent});
      std::vector<FileId> scope = used;
      scope.push_back(client);
      scope.push_back(parent);
      inst.scope = sorted_unique(std::move(scope));
      inst.evidence = {{"case", 2},
                       {"parent", parent},
                       {"client", client},
                       {"children_used", static_cast<std::int64_t>(used.size())}};
      out.push_back(std::move(inst));
    }
    for (auto c : descendants) seen[c] = 0;
  }
  return out;
}

namespace {

std::vector<FlawInstance> modularity_violations(
    const CoChangeMatrix& cochange, const Thresholds& thresholds,
    const std::function<bool(FileId, FileId)>& related) {
  std::vector<FlawInstance> out;
  for (std::size_t f = 0; f < cochange.size(); ++f) {
    const auto a = static_cast<FileId>(f);
    for (const auto& p : cochange.partners(a)) {
      if (p.file <= a || p.count < thresholds.cochange_min) continue;
      if (related(a, p.file)) continue;
      FlawInstance inst;
      inst.kind = FlawKind::ModularityViolation;
      inst.anchor_files = {a, p.file};
      inst.scope = inst.anchor_files;
      inst.evidence = {{"cochange", p.count}};
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace

std::vector<FlawInstance> detect_modularity_violations(const DependencyGraph& graph,
                                                       const CoChangeMatrix& cochange,
                                                       const Thresholds& thresholds) {
  return modularity_violations(cochange, thresholds, [&](FileId a, FileId b) {
    return graph.has_edge(a, b) || graph.has_edge(b, a);
  });
}

std::vector<FlawInstance> detect_modularity_violations(const DependencyGraph&,
                                                       const CoChangeMatrix& cochange,
                                                       const VisibilityMatrix& visibility,
                                                       const Thresholds& thresholds) {
  return modularity_violations(cochange, thresholds, [&](FileId a, FileId b) {
    return visibility.reaches(a, b) || visibility.reaches(b, a);
  });
}

std::vector<FlawInstance> detect_crossings(const DependencyGraph& graph,
                                           const CoChangeMatrix& cochange,
                                           const Thresholds& thresholds) {
  std::vector<FlawInstance> out;
  for (std::size_t f = 0; f < graph.size(); ++f) {
    const auto center = static_cast<FileId>(f);
    const auto dependents = graph.predecessors(center);
    const auto dependees = graph.successors(center);
    if (dependents.size() < thresholds.crossing_fanin_min ||
        dependees.size() < thresholds.crossing_fanout_min) {
      continue;
    }
    auto cochanging = [&](std::span<const FileId> files) {
      std::int64_t count = 0;
      for (auto g : files) {
        if (cochange.count(center, g) >= thresholds.cochange_min) ++count;
      }
      return count;
    };
    const auto with_dependents = cochanging(dependents);
    const auto with_dependees = cochanging(dependees);
    if (with_dependents == 0 || with_dependees == 0) continue;

    FlawInstance inst;
    inst.kind = FlawKind::Crossing;
    inst.anchor_files = {center};
    std::vector<FileId> scope(dependents.begin(), dependents.end());
    scope.insert(scope.end(), dependees.begin(), dependees.end());
    scope.push_back(center);
    inst.scope = sorted_unique(std::move(scope));
    inst.evidence = {{"fan_in", static_cast<std::int64_t>(dependents.size())},
                     {"fan_out", static_cast<std::int64_t>(dependees.size())},
                     {"cochanging_dependents", with_dependents},
                     {"cochanging_dependees", with_dependees}};
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<FlawInstance> detect_unstable_interfaces(const DependencyGraph& graph,
                                                     const VisibilityMatrix& visibility,
                                                     const CoChangeMatrix& cochange,
                                                     const Thresholds& thresholds) {
  std::vector<FlawInstance> out;
  const std::size_t n = graph.size();
  std::vector<std::uint32_t> dependents(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    for (auto f : visibility.row_members(static_cast<FileId>(g))) {
      if (f != g) ++dependents[f];
    }
  }
  for (std::size_t f = 0; f < n && f < cochange.size(); ++f) {
    const auto file = static_cast<FileId>(f);
    if (dependents[f] < thresholds.unstable_influence_min) continue;
    std::vector<FileId> partners;
    for (const auto& p : cochange.partners(file)) {
      if (p.count >= thresholds.cochange_min && visibility.reaches(p.file, file)) {
        partners.push_back(p.file);
      }
    }
    if (partners.size() < thresholds.unstable_partner_min) continue;
    FlawInstance inst;
    inst.kind = FlawKind::UnstableInterface;
    inst.anchor_files = {file};
    inst.evidence = {{"cochanging_dependents", static_cast<std::int64_t>(partners.size())},
                     {"transitive_dependents", dependents[f]}};
    partners.push_back(file);
    inst.scope = sorted_unique(std::move(partners));
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<FlawInstance>& FlawReport::of(FlawKind kind) const {
  static const std::vector<FlawInstance> kEmpty;
  auto it = instances.find(kind);
  return it == instances.end() ? kEmpty : it->second;
}

FlawReport flaw_report(const Snapshot& snapshot, const Thresholds& thresholds) {
  return flaw_report(snapshot, thresholds, transitive_closure(snapshot.graph()),
                     cochange_matrix(snapshot));
}

FlawReport flaw_report(const Snapshot& snapshot, const Thresholds& thresholds,
                       const VisibilityMatrix& visibility,
                       const CoChangeMatrix& cochange) {
  const auto& graph = snapshot.graph();
  FlawReport report;
  report.instances[FlawKind::Clique] = detect_cliques(graph);
  report.instances[FlawKind::PackageCycle] = detect_package_cycles(graph, snapshot.files());
  report.instances[FlawKind::ImproperInheritance] = detect_improper_inheritance(graph);
  report.instances[FlawKind::ModularityViolation] =
      thresholds.transitive_modularity
          ? detect_modularity_violations(graph, cochange, visibility, thresholds)
          : detect_modularity_violations(graph, cochange, thresholds);
  report.instances[FlawKind::Crossing] = detect_crossings(graph, cochange, thresholds);
  report.instances[FlawKind::UnstableInterface] =
      detect_unstable_interfaces(graph, visibility, cochange, thresholds);

  const std::size_t n = snapshot.size();
  report.participation.assign(n, 0);
  std::vector<char> any(n, 0);
  for (auto kind : kAllFlawKinds) {
    const auto& list = report.instances[kind];
    std::vector<char> in_kind(n, 0);
    std::size_t influenced = 0;
    for (const auto& inst : list) {
      for (auto f : inst.scope) {
        ++report.participation[f];
        if (!in_kind[f]) {
          in_kind[f] = 1;
          ++influenced;
        }
        any[f] = 1;
      }
    }
    report.summary[kind] = {list.size(), influenced};
  }
  report.influenced_files_any =
      static_cast<std::size_t>(std::count(any.begin(), any.end(), 1));
  return report;
}

}  // namespace adx
