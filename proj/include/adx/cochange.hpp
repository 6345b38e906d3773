#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "adx/model.hpp"
#include "adx/snapshot.hpp"

namespace adx {

// Sparse symmetric count of commits in which two files changed together.
// Only pairs with a count >= 1 are stored; the diagonal is never stored.
class CoChangeMatrix {
 public:
  struct Partner {
    FileId file;
    std::uint32_t count;
    friend bool operator==(const Partner&, const Partner&) = default;
  };

  CoChangeMatrix() = default;
  // `partners[f]` must be sorted by file id and mirror-consistent.
  explicit CoChangeMatrix(std::vector<std::vector<Partner>> partners);

  std::size_t size() const { return partners_.size(); }
  std::uint32_t count(FileId f, FileId g) const;
  std::span<const Partner> partners(FileId f) const { return partners_[f]; }
  // Number of unordered pairs stored.
  std::size_t pair_count() const;
  bool empty() const { return pair_count() == 0; }

  friend bool operator==(const CoChangeMatrix&,
                         const CoChangeMatrix&) = default;

 private:
  std::vector<std::vector<Partner>> partners_;
};

// Distinct file ids touched by each counted commit. Commits with fewer than
// two distinct files contribute no pairs; commits above `max_commit_size`
// (distinct files) are skipped when the cap is set.
std::vector<std::vector<FileId>> commit_file_sets(
    const Snapshot& snapshot, std::optional<std::size_t> max_commit_size);

// OpenMP kernel: one pass per file over the commits that touch it.
CoChangeMatrix cochange_matrix(
    const Snapshot& snapshot,
    std::optional<std::size_t> max_commit_size = std::nullopt);

// Serial reference: enumerates every pair of every commit.
CoChangeMatrix cochange_matrix_serial(
    const Snapshot& snapshot,
    std::optional<std::size_t> max_commit_size = std::nullopt);

// Kernels over prepared commit file sets, exposed for the benchmark.
CoChangeMatrix cochange_from_sets(
    std::size_t n, std::span<const std::vector<FileId>> commits);
CoChangeMatrix cochange_from_sets_serial(
    std::size_t n, std::span<const std::vector<FileId>> commits);

}  // namespace adx
