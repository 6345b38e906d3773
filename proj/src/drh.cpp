#include "adx/drh.hpp"

#include <algorithm>
#include <bit>

#include "adx/components.hpp"
#include "adx/error.hpp"

namespace adx {

std::size_t DrhStructure::module_count() const {
  std::size_t total = 0;
  for (const auto& l : layers) total += l.size();
  return total;
}

const DrhModule& DrhStructure::module(std::uint32_t id) const {
  for (const auto& l : layers) {
    if (!l.empty() && id >= l.front().id && id <= l.back().id) {
      return l[id - l.front().id];
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no DRH module " + std::to_string(id));
}

std::uint32_t DrhStructure::layer_of(FileId f) const {
  return module(module_of.at(f)).layer;
}

std::vector<FileId> DrhStructure::file_order() const {
  std::vector<FileId> order;
  order.reserve(module_of.size());
  for (const auto& l : layers) {
    for (const auto& m : l) order.insert(order.end(), m.members.begin(), m.members.end());
  }
  return order;
}

DrhStructure build_drh(const DependencyGraph& graph) {
  const auto succ = graph.successor_lists();
  const auto comps = strongly_connected_components(succ);
  const auto dag = condensation(succ, comps);
  const auto layer = longest_path_layers(dag);

  std::vector<std::uint32_t> order(comps.members.size());
  for (std::uint32_t c = 0; c < order.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (layer[a] != layer[b]) return layer[a] < layer[b];
    return comps.members[a].front() < comps.members[b].front();
  });

  DrhStructure drh;
  drh.module_of.assign(graph.size(), 0);
  std::uint32_t next_id = 0;
  for (auto c : order) {
    if (drh.layers.size() < layer[c]) drh.layers.resize(layer[c]);
    DrhModule m{next_id++, comps.members[c], layer[c]};
    for (auto f : m.members) drh.module_of[f] = m.id;
    drh.layers[layer[c] - 1].push_back(std::move(m));
  }
  return drh;
}

DlReport decoupling_level(const VisibilityMatrix& visibility,
                          std::span<const std::uint32_t> module_of) {
  const std::size_t n = visibility.size();
  if (n == 0) throw Error(ErrorCode::EmptySystem, "decoupling level of an empty system");
  if (module_of.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "partition size does not match system size");
  }
  std::uint32_t k = 0;
  for (auto m : module_of) k = std::max(k, m + 1);
  std::vector<std::vector<FileId>> members(k);
  for (std::size_t f = 0; f < n; ++f) members[module_of[f]].push_back(static_cast<FileId>(f));

  const auto columns = visibility.transposed();
  const std::size_t words = visibility.words_per_row();
  const double nd = static_cast<double>(n);

  DlReport report;
  report.n = n;
  std::vector<std::uint64_t> reach(words);
  std::vector<std::uint64_t> mask(words);
  std::uint64_t exact_numerator = 0;
  double inexact_numerator = 0.0;
  for (std::uint32_t m = 0; m < k; ++m) {
    if (members[m].empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty module in partition");
    }
    std::fill(reach.begin(), reach.end(), 0);
    std::fill(mask.begin(), mask.end(), 0);
    for (auto f : members[m]) {
      const auto* col = columns.row(f);
      for (std::size_t w = 0; w < words; ++w) reach[w] |= col[w];
      mask[f >> 6] |= std::uint64_t{1} << (f & 63);
    }
    std::size_t dependents = 0;
    for (std::size_t w = 0; w < words; ++w) dependents += std::popcount(reach[w] & ~mask[w]);

    DlModuleContribution c;
    c.module = m;
    c.size = members[m].size();
    c.dependents = dependents;
    const double s = static_cast<double>(c.size);
    c.independence = c.size == n ? 1.0 : 1.0 - static_cast<double>(dependents) / (nd - s);
    c.size_penalty = 1.0 - (s - 1.0) / nd;
    c.contribution = (s / nd) * c.independence * c.size_penalty;
    // Accumulate over the common denominator n^2 so that dependent-free
    // modules add exact integers.
    const std::uint64_t base = static_cast<std::uint64_t>(c.size) * (n - c.size + 1);
    if (dependents == 0 || c.size == n) {
      exact_numerator += base;
    } else {
      inexact_numerator += static_cast<double>(base) *
                           static_cast<double>(n - c.size - dependents) /
                           static_cast<double>(n - c.size);
    }
    report.modules.push_back(c);
  }
  report.dl = (static_cast<double>(exact_numerator) + inexact_numerator) / (nd * nd);
  return report;
}

DlReport decoupling_level(const DependencyGraph& graph,
                          const VisibilityMatrix& visibility) {
  const auto drh = build_drh(graph);
  return decoupling_level(visibility, drh.module_of);
}

DlReport decoupling_level(const DependencyGraph& graph) {
  return decoupling_level(graph, transitive_closure(graph));
}

}  // namespace adx
