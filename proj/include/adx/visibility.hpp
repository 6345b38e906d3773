#pragma once

#include <cstdint>
#include <vector>

#include "adx/graph.hpp"
#include "adx/model.hpp"

namespace adx {

// Reachability matrix as one bitset row per file. Row f holds f itself and
// every file f reaches through dependency edges.
class VisibilityMatrix {
 public:
  VisibilityMatrix() = default;
  explicit VisibilityMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool reaches(FileId from, FileId to) const {
    return (bits_[from * words_ + (to >> 6)] >> (to & 63)) & 1u;
  }
  void set(FileId from, FileId to) {
    bits_[from * words_ + (to >> 6)] |= std::uint64_t{1} << (to & 63);
  }

  std::uint64_t* row(FileId f) { return bits_.data() + f * words_; }
  const std::uint64_t* row(FileId f) const { return bits_.data() + f * words_; }

  // Files in row f, self included.
  std::size_t row_count(FileId f) const;
  std::vector<FileId> row_members(FileId f) const;
  // Total set cells, diagonal included.
  std::uint64_t nonempty() const;
  // Column view: row g of the result lists the files reaching g.
  VisibilityMatrix transposed() const;

  friend bool operator==(const VisibilityMatrix&,
                         const VisibilityMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// OpenMP kernel. Rows are built bottom-up over the strongly connected
// component condensation: every component in a layer only needs rows of
// lower layers, so each layer is filled in parallel.
VisibilityMatrix transitive_closure(const DependencyGraph& graph);

// Serial reference: an independent depth-first search from every file.
VisibilityMatrix transitive_closure_serial(const DependencyGraph& graph);

struct FanCounts {
  std::uint32_t direct_in = 0;
  std::uint32_t direct_out = 0;
  std::uint32_t transitive_in = 0;
  std::uint32_t transitive_out = 0;
  friend bool operator==(const FanCounts&, const FanCounts&) = default;
};

struct CouplingReport {
  double pc = 0.0;
  std::size_t n = 0;
  std::uint64_t nonempty = 0;
  std::uint64_t cells = 0;
  std::vector<FanCounts> fans;
};

// Propagation cost: nonempty cells of the visibility matrix over n^2, with
// the diagonal counted. Throws EmptySystem for n == 0.
CouplingReport propagation_cost(const DependencyGraph& graph);
CouplingReport propagation_cost(const DependencyGraph& graph,
                                const VisibilityMatrix& visibility);

}  // namespace adx
