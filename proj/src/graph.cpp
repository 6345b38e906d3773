#include "adx/graph.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "adx/error.hpp"

namespace adx {

DependencyGraph::DependencyGraph(std::size_t n, std::vector<DependencyEdge> edges)
    : n_(n) {
  for (const auto& e : edges) {
    if (e.source >= n || e.target >= n) {
      throw Error(ErrorCode::DanglingEdgeEndpoint,
                  "edge endpoint out of range: " + std::to_string(e.source) +
                      " -> " + std::to_string(e.target));
    }
    if (e.source == e.target) {
      throw Error(ErrorCode::SelfDependency,
                  "self dependency on file " + std::to_string(e.source));
    }
    if (e.weight == 0) {
      throw Error(ErrorCode::InvalidSnapshot, "edge weight must be >= 1");
    }
  }
  auto key = [](const DependencyEdge& e) {
    return std::tuple(e.source, e.target, e.kind);
  };
  std::sort(edges.begin(), edges.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  for (const auto& e : edges) {
    if (!edges_.empty() && key(edges_.back()) == key(e)) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  edge_offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) ++edge_offsets_[e.source + 1];
  for (std::size_t i = 0; i < n_; ++i) edge_offsets_[i + 1] += edge_offsets_[i];

  // Distinct successors follow directly from the sorted edge list.
  out_offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (i > 0 && edges_[i - 1].source == e.source &&
        edges_[i - 1].target == e.target)
      continue;
    out_.push_back(e.target);
    ++out_offsets_[e.source + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) out_offsets_[i + 1] += out_offsets_[i];

  in_offsets_.assign(n_ + 1, 0);
  for (std::size_t f = 0; f < n_; ++f) {
    for (FileId g : successors(static_cast<FileId>(f))) ++in_offsets_[g + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) in_offsets_[i + 1] += in_offsets_[i];
  in_.resize(out_.size());
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t f = 0; f < n_; ++f) {
    for (FileId g : successors(static_cast<FileId>(f))) {
      in_[cursor[g]++] = static_cast<FileId>(f);
    }
  }
}

std::span<const FileId> DependencyGraph::successors(FileId f) const {
  return {out_.data() + out_offsets_[f], out_offsets_[f + 1] - out_offsets_[f]};
}

std::span<const FileId> DependencyGraph::predecessors(FileId f) const {
  return {in_.data() + in_offsets_[f], in_offsets_[f + 1] - in_offsets_[f]};
}

std::span<const DependencyEdge> DependencyGraph::edges_from(FileId f) const {
  return {edges_.data() + edge_offsets_[f],
          edge_offsets_[f + 1] - edge_offsets_[f]};
}

bool DependencyGraph::has_edge(FileId from, FileId to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

bool DependencyGraph::has_plain_edge(FileId from, FileId to) const {
  for (const auto& e : edges_from(from)) {
    if (e.target == to && !is_inheritance(e.kind)) return true;
  }
  return false;
}

std::vector<std::vector<FileId>> DependencyGraph::successor_lists() const {
  std::vector<std::vector<FileId>> lists(n_);
  for (std::size_t f = 0; f < n_; ++f) {
    auto s = successors(static_cast<FileId>(f));
    lists[f].assign(s.begin(), s.end());
  }
  return lists;
}

}  // namespace adx
