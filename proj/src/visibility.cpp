#include "adx/visibility.hpp"

#include <algorithm>
#include <bit>

#include "adx/components.hpp"
#include "adx/error.hpp"

namespace adx {
namespace {

template <typename Fn>
void for_each_bit(const std::uint64_t* words, std::size_t count, Fn&& fn) {
  for (std::size_t w = 0; w < count; ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      fn(static_cast<FileId>(w * 64 + b));
      bits &= bits - 1;
    }
  }
}

}  // namespace

VisibilityMatrix::VisibilityMatrix(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

std::size_t VisibilityMatrix::row_count(FileId f) const {
  std::size_t total = 0;
  const auto* r = row(f);
  for (std::size_t w = 0; w < words_; ++w) total += std::popcount(r[w]);
  return total;
}

std::vector<FileId> VisibilityMatrix::row_members(FileId f) const {
  std::vector<FileId> members;
  for_each_bit(row(f), words_, [&](FileId g) { members.push_back(g); });
  return members;
}

std::uint64_t VisibilityMatrix::nonempty() const {
  std::uint64_t total = 0;
  for (auto w : bits_) total += std::popcount(w);
  return total;
}

VisibilityMatrix VisibilityMatrix::transposed() const {
  VisibilityMatrix t(n_);
  for (std::size_t f = 0; f < n_; ++f) {
    for_each_bit(row(static_cast<FileId>(f)), words_,
                 [&](FileId g) { t.set(g, static_cast<FileId>(f)); });
  }
  return t;
}

VisibilityMatrix transitive_closure(const DependencyGraph& graph) {
  const std::size_t n = graph.size();
  VisibilityMatrix vis(n);
  if (n == 0) return vis;

  const auto succ = graph.successor_lists();
  const auto comps = strongly_connected_components(succ);
  const auto dag = condensation(succ, comps);
  const auto layer = longest_path_layers(dag);
  const std::size_t k = comps.members.size();
  const std::size_t words = vis.words_per_row();

  std::uint32_t max_layer = 0;
  for (auto l : layer) max_layer = std::max(max_layer, l);
  std::vector<std::vector<std::uint32_t>> by_layer(max_layer);
  for (std::uint32_t c = 0; c < k; ++c) by_layer[layer[c] - 1].push_back(c);

  // Component rows; a component reaches itself and everything its
  // successor components reach.
  std::vector<std::uint64_t> comp_rows(k * words, 0);
  for (const auto& level : by_layer) {
    const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
      const std::uint32_t c = level[i];
      std::uint64_t* row = comp_rows.data() + c * words;
      for (auto m : comps.members[c]) row[m >> 6] |= std::uint64_t{1} << (m & 63);
      for (auto s : dag[c]) {
        const std::uint64_t* src = comp_rows.data() + s * words;
        for (std::size_t w = 0; w < words; ++w) row[w] |= src[w];
      }
    }
  }

  const auto files = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t f = 0; f < files; ++f) {
    const std::uint64_t* src =
        comp_rows.data() + comps.component_of[f] * words;
    std::copy(src, src + words, vis.row(static_cast<FileId>(f)));
  }
  return vis;
}

VisibilityMatrix transitive_closure_serial(const DependencyGraph& graph) {
  const std::size_t n = graph.size();
  VisibilityMatrix vis(n);
  std::vector<FileId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    const auto source = static_cast<FileId>(s);
    vis.set(source, source);
    stack.assign(1, source);
    while (!stack.empty()) {
      const FileId v = stack.back();
      stack.pop_back();
      for (FileId w : graph.successors(v)) {
        if (!vis.reaches(source, w)) {
          vis.set(source, w);
          stack.push_back(w);
        }
      }
    }
  }
  return vis;
}

CouplingReport propagation_cost(const DependencyGraph& graph) {
  return propagation_cost(graph, transitive_closure(graph));
}

CouplingReport propagation_cost(const DependencyGraph& graph,
                                const VisibilityMatrix& visibility) {
  const std::size_t n = graph.size();
  if (n == 0) throw Error(ErrorCode::EmptySystem, "propagation cost of an empty system");
  CouplingReport report;
  report.n = n;
  report.cells = static_cast<std::uint64_t>(n) * n;
  report.fans.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    const auto id = static_cast<FileId>(f);
    auto& fan = report.fans[f];
    fan.direct_in = static_cast<std::uint32_t>(graph.fan_in(id));
    fan.direct_out = static_cast<std::uint32_t>(graph.fan_out(id));
    const auto reach = visibility.row_count(id);
    fan.transitive_out = static_cast<std::uint32_t>(reach - 1);
    report.nonempty += reach;
    for_each_bit(visibility.row(id), visibility.words_per_row(), [&](FileId g) {
      if (g != id) ++report.fans[g].transitive_in;
    });
  }
  report.pc = static_cast<double>(report.nonempty) / static_cast<double>(report.cells);
  return report;
}

}  // namespace adx
