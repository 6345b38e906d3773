#pragma once

#include <cstdint>
#include <vector>

namespace adx {

// Strongly connected components of a digraph given as successor lists.
// `members` of each component are sorted ascending; components are numbered
// in reverse topological order (a component's successors come first), so
// every edge u -> v satisfies component_of[u] >= component_of[v].
struct Components {
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<std::uint32_t> component_of;
};

// Iterative Tarjan.
Components strongly_connected_components(
    const std::vector<std::vector<std::uint32_t>>& successors);

// Distinct successor components of each component, ascending.
std::vector<std::vector<std::uint32_t>> condensation(
    const std::vector<std::vector<std::uint32_t>>& successors,
    const Components& components);

// Longest-path layering of the condensation: a component without successors
// gets layer 1, otherwise 1 + max layer of successors. Relies on the Tarjan
// numbering (successor ids are smaller).
std::vector<std::uint32_t> longest_path_layers(
    const std::vector<std::vector<std::uint32_t>>& dag);

}  // namespace adx
