#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adx/model.hpp"

namespace adx {

// Typed, weighted file-to-file dependencies. An edge source -> target means
// `source` depends on `target`. Edges are kept sorted by (source, target,
// kind); the adjacency lists hold distinct neighbours in ascending order.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  // Validates endpoints and self-edges; duplicate (source, target, kind)
  // triples are merged by summing weights.
  DependencyGraph(std::size_t n, std::vector<DependencyEdge> edges);

  std::size_t size() const { return n_; }
  std::span<const DependencyEdge> edges() const { return edges_; }

  // Distinct files `f` depends on directly.
  std::span<const FileId> successors(FileId f) const;
  // Distinct files that depend on `f` directly.
  std::span<const FileId> predecessors(FileId f) const;
  // All edges leaving `f`, sorted by (target, kind).
  std::span<const DependencyEdge> edges_from(FileId f) const;

  std::size_t fan_out(FileId f) const { return successors(f).size(); }
  std::size_t fan_in(FileId f) const { return predecessors(f).size(); }

  // Any kind.
  bool has_edge(FileId from, FileId to) const;
  // Any non-inheritance kind.
  bool has_plain_edge(FileId from, FileId to) const;

  // Adjacency as plain vectors, for the graph algorithms.
  std::vector<std::vector<FileId>> successor_lists() const;

  friend bool operator==(const DependencyGraph& a, const DependencyGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<DependencyEdge> edges_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<std::size_t> out_offsets_;
  std::vector<FileId> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<FileId> in_;
};

}  // namespace adx
