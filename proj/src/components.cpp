#include "adx/components.hpp"

#include <algorithm>
#include <limits>

namespace adx {

Components strongly_connected_components(
    const std::vector<std::vector<std::uint32_t>>& successors) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const auto n = static_cast<std::uint32_t>(successors.size());
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  // (vertex, next successor position)
  std::vector<std::pair<std::uint32_t, std::size_t>> call_stack;
  std::uint32_t next_index = 0;

  Components result;
  result.component_of.assign(n, 0);

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.emplace_back(root, 0);
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      auto& [v, pos] = call_stack.back();
      if (pos < successors[v].size()) {
        const std::uint32_t w = successors[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const std::uint32_t parent = call_stack.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<std::uint32_t> members;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          members.push_back(w);
        } while (w != done);
        std::sort(members.begin(), members.end());
        const auto id = static_cast<std::uint32_t>(result.members.size());
        for (auto m : members) result.component_of[m] = id;
        result.members.push_back(std::move(members));
      }
    }
  }
  return result;
}

std::vector<std::vector<std::uint32_t>> condensation(
    const std::vector<std::vector<std::uint32_t>>& successors,
    const Components& components) {
  std::vector<std::vector<std::uint32_t>> dag(components.members.size());
  for (std::size_t v = 0; v < successors.size(); ++v) {
    const auto cv = components.component_of[v];
    for (auto w : successors[v]) {
      const auto cw = components.component_of[w];
      if (cv != cw) dag[cv].push_back(cw);
    }
  }
  for (auto& out : dag) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return dag;
}

std::vector<std::uint32_t> longest_path_layers(
    const std::vector<std::vector<std::uint32_t>>& dag) {
  // Tarjan numbering puts successors first, so one forward sweep suffices.
  std::vector<std::uint32_t> layer(dag.size(), 1);
  for (std::size_t c = 0; c < dag.size(); ++c) {
    for (auto s : dag[c]) layer[c] = std::max(layer[c], layer[s] + 1);
  }
  return layer;
}

}  // namespace adx
