#pragma once

// Snapshot builders and random fixture generators shared by the unit tests,
// the acceptance binary and the benchmark.

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adx/flaws.hpp"
#include "adx/graph.hpp"
#include "adx/records.hpp"
#include "adx/snapshot.hpp"

namespace adx::testing {

using Rng = std::mt19937_64;

inline constexpr UnixSeconds kEpoch = 1498867200;  // 2017-07-01T00:00:00Z
inline constexpr UnixSeconds kDay = 86400;

struct EdgeList {
  std::size_t n = 0;
  std::vector<std::pair<FileId, FileId>> edges;  // distinct, no self loops
};

inline EdgeList random_digraph(Rng& rng, std::size_t n, double density) {
  EdgeList g{n, {}};
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && coin(rng)) g.edges.emplace_back(FileId(i), FileId(j));
    }
  }
  return g;
}

// Edges only from higher to lower ids.
inline EdgeList random_dag(Rng& rng, std::size_t n, double density) {
  EdgeList g{n, {}};
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (coin(rng)) g.edges.emplace_back(FileId(i), FileId(j));
    }
  }
  return g;
}

inline DependencyGraph to_graph(const EdgeList& g,
                                DependencyKind kind = DependencyKind::Call) {
  std::vector<DependencyEdge> edges;
  for (auto [s, t] : g.edges) edges.push_back({s, t, kind, 1});
  return DependencyGraph(g.n, std::move(edges));
}

inline EdgeList permute(const EdgeList& g, const std::vector<FileId>& perm) {
  EdgeList out{g.n, {}};
  for (auto [s, t] : g.edges) out.edges.emplace_back(perm[s], perm[t]);
  return out;
}

inline std::vector<FileId> random_permutation(Rng& rng, std::size_t n) {
  std::vector<FileId> p(n);
  std::iota(p.begin(), p.end(), FileId{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Collects raw inputs for build_snapshot. File i is named `f0000i.java`, so
// snapshot ids equal builder indices as long as no history-only paths are
// added.
class SnapshotBuilder {
 public:
  explicit SnapshotBuilder(std::size_t n, std::string package = "core") {
    for (std::size_t i = 0; i < n; ++i) files.push_back({name(i), package});
  }

  static std::string name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "f%05zu.java", i);
    return buf;
  }

  std::size_t add_file(std::string package) {
    files.push_back({name(files.size()), std::move(package)});
    return files.size() - 1;
  }

  void set_package(std::size_t i, std::string package) { files[i].package = std::move(package); }

  void edge(std::size_t from, std::size_t to, std::string kind = "Call",
            std::uint32_t weight = 1) {
    deps.push_back({name(from), name(to), std::move(kind), weight});
  }

  RawCommitRecord& commit(const std::vector<std::size_t>& touched, std::string author = "dev",
                          std::optional<UnixSeconds> when = std::nullopt,
                          std::string message = "change", std::uint64_t added = 1,
                          std::uint64_t deleted = 0) {
    RawCommitRecord c;
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%07zu", commits.size());
    c.hash = buf;
    c.author = std::move(author);
    c.timestamp = when ? *when : kEpoch + static_cast<UnixSeconds>(commits.size()) * 3600;
    c.message = std::move(message);
    for (auto f : touched) c.numstat.push_back({added, deleted, false, name(f), std::nullopt});
    commits.push_back(std::move(c));
    return commits.back();
  }

  Issue& issue(std::string key, IssueKind kind, std::optional<UnixSeconds> opened,
               std::optional<UnixSeconds> closed, IssueStatus status) {
    issues.push_back({std::move(key), kind, opened, closed, status});
    return issues.back();
  }

  // Links every commit whose message mentions a key exactly (space separated).
  void link_by_message() {
    std::set<std::string> known;
    for (const auto& i : issues) known.insert(i.key);
    for (auto& c : commits) {
      c.linked_issues.clear();
      std::size_t pos = 0;
      while (pos < c.message.size()) {
        auto end = c.message.find_first_of(" ,", pos);
        if (end == std::string::npos) end = c.message.size();
        auto word = c.message.substr(pos, end - pos);
        if (known.contains(word)) c.linked_issues.insert(word);
        pos = end + 1;
      }
    }
  }

  Snapshot build(std::string label = "fixture") const {
    return build_snapshot(files, deps, commits, issues, releases, std::move(label));
  }

  std::vector<FileSpec> files;
  std::vector<RawDependencyRecord> deps;
  std::vector<RawCommitRecord> commits;
  std::vector<Issue> issues;
  std::vector<Release> releases;
};

inline SnapshotBuilder builder_from(const EdgeList& g) {
  SnapshotBuilder b(g.n);
  for (auto [s, t] : g.edges) b.edge(s, t);
  return b;
}

// Random history over `n` files: commit sizes 1..max_size, authors a0..a4,
// churn 0..99 per file.
inline void random_history(Rng& rng, SnapshotBuilder& b, std::size_t commits,
                           std::size_t max_size, std::size_t authors = 5) {
  const std::size_t n = b.files.size();
  std::uniform_int_distribution<std::size_t> size_d(1, max_size);
  std::uniform_int_distribution<std::size_t> file_d(0, n - 1);
  std::uniform_int_distribution<std::size_t> author_d(0, authors - 1);
  std::uniform_int_distribution<std::uint64_t> churn_d(0, 60);
  for (std::size_t i = 0; i < commits; ++i) {
    std::set<std::size_t> touched;
    const auto k = std::min(n, size_d(rng));
    while (touched.size() < k) touched.insert(file_d(rng));
    auto& c = b.commit({touched.begin(), touched.end()}, "a" + std::to_string(author_d(rng)));
    for (auto& e : c.numstat) {
      e.added = churn_d(rng);
      e.deleted = churn_d(rng) / 2;
    }
  }
}

// Dependency graph plus bug history: `bugs` Bug issues (and a few features),
// each fixed by one to three commits touching one to three files. Files with
// lower ids are picked more often, so bug weight is skewed.
inline SnapshotBuilder random_bug_history(Rng& rng, const EdgeList& g, std::size_t bugs,
                                          std::size_t commits) {
  SnapshotBuilder b = builder_from(g);
  for (std::size_t k = 0; k < bugs + bugs / 4; ++k) {
    const auto opened = kEpoch + static_cast<UnixSeconds>(k) * kDay;
    b.issue("BUG-" + std::to_string(k + 1), k < bugs ? IssueKind::Bug : IssueKind::Feature,
            opened, opened + 3 * kDay, IssueStatus::Fixed);
  }
  std::uniform_int_distribution<std::size_t> issue_d(1, bugs + bugs / 4);
  std::uniform_int_distribution<std::size_t> size_d(1, 3);
  std::geometric_distribution<std::size_t> file_d(3.0 / static_cast<double>(g.n));
  for (std::size_t i = 0; i < commits; ++i) {
    std::set<std::size_t> touched;
    const auto k = std::min(g.n, size_d(rng));
    while (touched.size() < k) touched.insert(file_d(rng) % g.n);
    const auto key = "BUG-" + std::to_string(issue_d(rng));
    b.commit({touched.begin(), touched.end()}, "a" + std::to_string(i % 4), std::nullopt,
             key + " fix");
  }
  b.link_by_message();
  return b;
}

// History-heavy fixture: `commits` commits over `n` files spread across a
// year, five releases, 200 issues of mixed kinds and statuses, and commit
// messages mentioning issue keys. Some files are owned by one author.
inline SnapshotBuilder history_fixture(Rng& rng, std::size_t n = 150, std::size_t commits = 1000,
                                       std::size_t issues = 200) {
  SnapshotBuilder b(n);
  for (auto [s, t] : random_dag(rng, n, 0.02).edges) b.edge(s, t);
  const UnixSeconds span = 365 * kDay;
  std::uniform_int_distribution<UnixSeconds> when_d(0, span);
  std::uniform_int_distribution<int> kind_d(0, 4), status_d(0, 5), dur_d(0, 40 * 24);
  for (std::size_t k = 0; k < issues; ++k) {
    const auto opened = kEpoch + when_d(rng);
    const int st = status_d(rng);
    const auto status = st < 3 ? IssueStatus::Fixed
                        : st == 3 ? IssueStatus::Closed
                        : st == 4 ? IssueStatus::Open
                                  : IssueStatus::Other;
    std::optional<UnixSeconds> closed;
    if (status != IssueStatus::Open) closed = opened + dur_d(rng) * 3600;
    std::optional<UnixSeconds> open_ts = opened;
    if (k % 37 == 5) open_ts.reset();  // missing open date
    b.issue("ISS-" + std::to_string(k + 1), static_cast<IssueKind>(kind_d(rng)), open_ts, closed,
            status);
  }
  std::uniform_int_distribution<std::size_t> size_d(1, 6), file_d(0, n - 1), key_d(1, issues + 20);
  std::uniform_int_distribution<std::uint64_t> churn_d(0, 120);
  std::bernoulli_distribution mention(0.7), skew(0.5);
  for (std::size_t i = 0; i < commits; ++i) {
    std::set<std::size_t> touched;
    const auto k = size_d(rng);
    while (touched.size() < k) touched.insert(skew(rng) ? file_d(rng) % (n / 5 + 1) : file_d(rng));
    // Files in the upper half only ever see their own author.
    const auto first = *touched.begin();
    const auto author = first >= n / 2 ? "own" + std::to_string(first % 7)
                                       : "a" + std::to_string(i % 6);
    std::string msg = "work";
    if (mention(rng)) msg = "ISS-" + std::to_string(key_d(rng)) + " " + msg;
    auto& c = b.commit({touched.begin(), touched.end()}, author, kEpoch + when_d(rng), msg);
    for (auto& e : c.numstat) {
      e.added = churn_d(rng);
      e.deleted = churn_d(rng) / 3;
    }
  }
  b.link_by_message();
  for (int r = 0; r < 5; ++r)
    b.releases.push_back({"v" + std::to_string(r + 1), kEpoch + r * (span / 4)});
  return b;
}

// ---------------------------------------------------------------------------
// Injected-flaw fixture

struct PlantedFlaw {
  FlawKind kind;
  std::set<FileId> scope;
};

struct InjectedFixture {
  SnapshotBuilder builder{0};
  std::vector<PlantedFlaw> truth;
};

// Plants `per_kind` isolated gadgets of every flaw kind next to a flawless
// background (a package-ordered DAG whose commits each touch one file).
// One improper-inheritance gadget uses case 1, which also forms a clique;
// the ground truth records both.
inline InjectedFixture injected_flaw_fixture(Rng& rng, std::size_t background = 120,
                                             std::size_t per_kind = 3) {
  InjectedFixture fx;
  auto& b = fx.builder;
  auto plant = [&](FlawKind kind, std::vector<std::size_t> files) {
    std::set<FileId> scope;
    for (auto f : files) scope.insert(static_cast<FileId>(f));
    fx.truth.push_back({kind, std::move(scope)});
  };
  auto pkg = [](std::string_view base, std::size_t i) {
    return std::string(base) + std::to_string(i);
  };

  // Background: package bg<k> holds files 10k..10k+9; edges run to lower ids
  // only, so neither files nor packages form cycles.
  for (std::size_t i = 0; i < background; ++i) b.add_file(pkg("bg", i / 10));
  std::uniform_int_distribution<std::size_t> out_d(0, 3);
  for (std::size_t i = 1; i < background; ++i) {
    std::set<std::size_t> targets;
    const auto k = std::min(i, out_d(rng));
    std::uniform_int_distribution<std::size_t> t_d(0, i - 1);
    while (targets.size() < k) targets.insert(t_d(rng));
    for (auto t : targets) b.edge(i, t, t % 2 ? "Use" : "Call");
  }
  for (std::size_t i = 0; i < background; ++i) b.commit({i}, "a" + std::to_string(i % 3));

  for (std::size_t g = 0; g < per_kind; ++g) {
    // Clique: a ring of 2 + g files.
    {
      std::vector<std::size_t> ring;
      for (std::size_t k = 0; k < 2 + g; ++k) ring.push_back(b.add_file(pkg("clq", g)));
      for (std::size_t k = 0; k < ring.size(); ++k) b.edge(ring[k], ring[(k + 1) % ring.size()]);
      plant(FlawKind::Clique, ring);
    }
    // Package cycle: a/X -> b/Y and b/Z -> a/W.
    {
      auto x = b.add_file(pkg("pca", g)), w = b.add_file(pkg("pca", g));
      auto y = b.add_file(pkg("pcb", g)), z = b.add_file(pkg("pcb", g));
      b.edge(x, y, "Use");
      b.edge(z, w, "Call");
      plant(FlawKind::PackageCycle, {x, y, z, w});
    }
    // Improper inheritance.
    if (g == 0) {
      // Case 1: the parent calls its child (also a clique).
      auto p = b.add_file(pkg("ii", g)), c = b.add_file(pkg("ii", g));
      b.edge(c, p, "Extend");
      b.edge(p, c, "Call");
      plant(FlawKind::ImproperInheritance, {p, c});
      plant(FlawKind::Clique, {p, c});
    } else {
      // Case 2: an outside client uses the parent and a child.
      auto p = b.add_file(pkg("ii", g)), c = b.add_file(pkg("ii", g));
      auto k = b.add_file(pkg("ii", g));
      b.edge(c, p, g % 2 ? "Extend" : "Implement");
      b.edge(k, p, "Use");
      b.edge(k, c, "Call");
      plant(FlawKind::ImproperInheritance, {k, p, c});
    }
    // Modularity violation: no edge, co-changed twice.
    {
      auto x = b.add_file(pkg("mv", g)), y = b.add_file(pkg("mv", g));
      b.commit({x, y});
      b.commit({x, y});
      plant(FlawKind::ModularityViolation, {x, y});
    }
    // Crossing: 4 dependents, 4 dependees, co-change with one of each.
    {
      auto center = b.add_file(pkg("cr", g));
      std::vector<std::size_t> scope{center}, dependents, dependees;
      for (int k = 0; k < 4; ++k) {
        dependents.push_back(b.add_file(pkg("cr", g)));
        b.edge(dependents.back(), center);
        dependees.push_back(b.add_file(pkg("cr", g)));
        b.edge(center, dependees.back(), "Use");
      }
      scope.insert(scope.end(), dependents.begin(), dependents.end());
      scope.insert(scope.end(), dependees.begin(), dependees.end());
      for (int k = 0; k < 2; ++k) {
        b.commit({center, dependents[0]});
        b.commit({center, dependees[0]});
      }
      plant(FlawKind::Crossing, scope);
    }
    // Unstable interface: 5 dependents co-changing twice each.
    {
      auto u = b.add_file(pkg("ui", g));
      std::vector<std::size_t> scope{u};
      for (int k = 0; k < 5; ++k) {
        auto d = b.add_file(pkg("ui", g));
        b.edge(d, u, "Call");
        b.commit({u, d});
        b.commit({u, d});
        scope.push_back(d);
      }
      plant(FlawKind::UnstableInterface, scope);
    }
  }
  return fx;
}

// ---------------------------------------------------------------------------
// Before/after fixtures seeded with the published maintainability figures:
// churn per bug 102 -> 33.9 and bug-fix time 10.74 -> 7.31 days.

inline constexpr UnixSeconds kBeforeDuration = 927936;  // 10.74 days
inline constexpr UnixSeconds kAfterDuration = 631584;   // 7.31 days

inline Snapshot seeded_snapshot(const std::vector<std::uint64_t>& bug_churn,
                                UnixSeconds duration, std::string label) {
  SnapshotBuilder b(12);
  for (std::size_t i = 1; i < 12; ++i) b.edge(i, i - 1);
  for (std::size_t k = 0; k < bug_churn.size(); ++k) {
    const auto key = "SM-" + std::to_string(k + 1);
    const UnixSeconds opened = kEpoch + static_cast<UnixSeconds>(k) * kDay;
    b.issue(key, IssueKind::Bug, opened, opened + duration, IssueStatus::Fixed);
    auto& c = b.commit({k % 12}, "dev", opened + 3600, key + " fix", bug_churn[k], 0);
    (void)c;
  }
  b.link_by_message();
  return b.build(std::move(label));
}

inline Snapshot seeded_before() { return seeded_snapshot({100, 104}, kBeforeDuration, "before"); }

inline Snapshot seeded_after() {
  // Ten bugs, 339 changed lines in total.
  return seeded_snapshot({30, 31, 32, 33, 34, 34, 35, 36, 37, 37}, kAfterDuration, "after");
}

}  // namespace adx::testing
