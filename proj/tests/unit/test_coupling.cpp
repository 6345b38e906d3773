#include "adx/error.hpp"
#include "adx/visibility.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace adx;
using namespace adx::testing;

namespace {

oracle::Matrix as_matrix(const VisibilityMatrix& v) {
  oracle::Matrix m(v.size(), std::vector<char>(v.size(), 0));
  for (FileId f = 0; f < v.size(); ++f)
    for (FileId g = 0; g < v.size(); ++g) m[f][g] = v.reaches(f, g);
  return m;
}

EdgeList chain(std::size_t n) {
  EdgeList g{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(FileId(i), FileId(i + 1));
  return g;
}

EdgeList complete(std::size_t n) {
  EdgeList g{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.edges.emplace_back(FileId(i), FileId(j));
  return g;
}

}  // namespace

TEST_SUITE("coupling") {
  TEST_CASE("edgeless closure is the identity") {
    const auto v = transitive_closure(to_graph({4, {}}));
    for (FileId f = 0; f < 4; ++f) CHECK(v.row_members(f) == std::vector<FileId>{f});
    CHECK(propagation_cost(to_graph({4, {}})).pc == 0.25);
  }

  TEST_CASE("chain closure") {
    const auto g = to_graph(chain(4));
    const auto v = transitive_closure(g);
    CHECK(v.row_members(0) == std::vector<FileId>{0, 1, 2, 3});
    CHECK(v.row_members(2) == std::vector<FileId>{2, 3});
    const auto r = propagation_cost(g);
    CHECK(r.nonempty == 10);
    CHECK(r.cells == 16);
    CHECK(r.pc == 0.625);
  }

  TEST_CASE("complete digraph saturates") {
    CHECK(propagation_cost(to_graph(complete(5))).pc == 1.0);
  }

  TEST_CASE("empty system") {
    CHECK_THROWS_AS(propagation_cost(DependencyGraph(0, {})), Error);
  }

  TEST_CASE("closure equals the reachability oracle on random digraphs") {
    Rng rng(1);
    std::uniform_int_distribution<std::size_t> n_d(1, 50);
    std::uniform_real_distribution<double> p_d(0.0, 0.5);
    for (int round = 0; round < 100; ++round) {
      const auto g = random_digraph(rng, n_d(rng), p_d(rng));
      const auto graph = to_graph(g);
      const auto v = transitive_closure(graph);
      const auto oracle = oracle::reachability(g.n, g.edges);
      REQUIRE(as_matrix(v) == oracle);
      CHECK(v == transitive_closure_serial(graph));
      CHECK(v.nonempty() == oracle::nonempty(oracle));
    }
  }

  TEST_CASE("closure rows are closed under composition") {
    Rng rng(2);
    for (int round = 0; round < 20; ++round) {
      const auto v = transitive_closure(to_graph(random_digraph(rng, 30, 0.06)));
      for (FileId f = 0; f < v.size(); ++f) {
        CHECK(v.reaches(f, f));
        for (auto g : v.row_members(f))
          for (auto h : v.row_members(g)) CHECK(v.reaches(f, h));
      }
    }
  }

  TEST_CASE("pc bounds, monotonicity and relabeling") {
    Rng rng(3);
    for (int round = 0; round < 40; ++round) {
      const std::size_t n = 2 + round % 25;
      auto g = random_digraph(rng, n, 0.08);
      const double pc = propagation_cost(to_graph(g)).pc;
      CHECK(pc >= 1.0 / double(n));
      CHECK(pc <= 1.0);

      const auto perm = random_permutation(rng, n);
      CHECK(propagation_cost(to_graph(permute(g, perm))).pc == pc);

      // Add one missing edge.
      auto bigger = g;
      for (std::size_t i = 0; i < n && bigger.edges.size() == g.edges.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::pair e{FileId(i), FileId(j)};
          if (i != j && std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) {
            bigger.edges.push_back(e);
            break;
          }
        }
      }
      CHECK(propagation_cost(to_graph(bigger)).pc >= pc);
    }
  }

  TEST_CASE("fan counts") {
    Rng rng(4);
    for (int round = 0; round < 20; ++round) {
      const auto g = random_digraph(rng, 25, 0.1);
      const auto graph = to_graph(g);
      const auto r = propagation_cost(graph);
      const auto oracle = oracle::reachability(g.n, g.edges);
      std::uint64_t in_sum = 0, out_sum = 0;
      for (FileId f = 0; f < g.n; ++f) {
        std::uint32_t tin = 0, tout = 0, din = 0, dout = 0;
        for (FileId x = 0; x < g.n; ++x) {
          if (x == f) continue;
          tin += oracle[x][f];
          tout += oracle[f][x];
        }
        for (auto [s, t] : g.edges) {
          din += t == f;
          dout += s == f;
        }
        CHECK(r.fans[f] == FanCounts{din, dout, tin, tout});
        CHECK(tin <= g.n - 1);
        in_sum += tin;
        out_sum += tout;
      }
      CHECK(in_sum == r.nonempty - g.n);
      CHECK(out_sum == r.nonempty - g.n);
    }
  }

  TEST_CASE("edge kinds and weights do not matter") {
    std::vector<DependencyEdge> edges{{0, 1, DependencyKind::Extend, 7},
                                      {1, 2, DependencyKind::Implement, 1}};
    CHECK(propagation_cost(DependencyGraph(3, edges)).nonempty == 3 + 2 + 1);
  }
}
