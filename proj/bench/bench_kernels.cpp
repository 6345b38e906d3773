// Serial vs OpenMP kernels on synthetic inputs.

#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "adx/cochange.hpp"
#include "adx/visibility.hpp"

namespace {

adx::DependencyGraph layered_graph(std::size_t n) {
  // Sparse DAG with a few back edges, so some cycles exist.
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<adx::DependencyEdge> edges;
  for (std::size_t i = 0; i < n * 4; ++i) {
    auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a < b && i % 50 != 0) std::swap(a, b);
    edges.push_back({adx::FileId(a), adx::FileId(b), adx::DependencyKind::Call, 1});
  }
  return adx::DependencyGraph(n, std::move(edges));
}

std::vector<std::vector<adx::FileId>> commit_sets(std::size_t n, std::size_t commits) {
  std::mt19937_64 rng(7);
  std::geometric_distribution<std::size_t> size(0.2);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::vector<adx::FileId>> out(commits);
  for (auto& c : out) {
    const std::size_t k = 2 + size(rng);
    for (std::size_t i = 0; i < k; ++i) c.push_back(adx::FileId(pick(rng)));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return out;
}

void BM_ClosureSerial(benchmark::State& state) {
  const auto g = layered_graph(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adx::transitive_closure_serial(g));
}

void BM_ClosureParallel(benchmark::State& state) {
  const auto g = layered_graph(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adx::transitive_closure(g));
}

void BM_CoChangeSerial(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const auto sets = commit_sets(n, n * 10);
  for (auto _ : state) benchmark::DoNotOptimize(adx::cochange_from_sets_serial(n, sets));
}

void BM_CoChangeParallel(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const auto sets = commit_sets(n, n * 10);
  for (auto _ : state) benchmark::DoNotOptimize(adx::cochange_from_sets(n, sets));
}

}  // namespace

BENCHMARK(BM_ClosureSerial)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClosureParallel)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CoChangeSerial)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CoChangeParallel)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
