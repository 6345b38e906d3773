#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adx/graph.hpp"
#include "adx/model.hpp"
#include "adx/visibility.hpp"

namespace adx {

struct DrhModule {
  std::uint32_t id = 0;
  std::vector<FileId> members;  // sorted
  std::uint32_t layer = 1;
  friend bool operator==(const DrhModule&, const DrhModule&) = default;
};

// Design rule hierarchy. layers[0] is layer 1, the top: files that depend on
// nothing outside their own module. A dependency f -> g always satisfies
// layer(f) >= layer(g), with equality only inside one module.
struct DrhStructure {
  std::vector<std::vector<DrhModule>> layers;
  std::vector<std::uint32_t> module_of;  // file id -> module id

  std::size_t module_count() const;
  std::uint32_t layer_of(FileId f) const;
  const DrhModule& module(std::uint32_t id) const;
  // Files ordered by layer, then module, then id.
  std::vector<FileId> file_order() const;
};

// Strongly connected components become indivisible modules, layered by
// longest path on the condensation. Each remaining file is a singleton.
DrhStructure build_drh(const DependencyGraph& graph);

struct DlModuleContribution {
  std::uint32_t module = 0;
  std::size_t size = 0;
  std::size_t dependents = 0;  // files outside reaching any member
  double independence = 0.0;   // 1 - dependents / (n - size)
  double size_penalty = 0.0;   // 1 - (size - 1) / n
  double contribution = 0.0;   // size/n * independence * size_penalty
};

struct DlReport {
  double dl = 0.0;
  std::size_t n = 0;
  std::vector<DlModuleContribution> modules;
};

// Decoupling level over the DRH partition. Throws EmptySystem.
DlReport decoupling_level(const DependencyGraph& graph);
DlReport decoupling_level(const DependencyGraph& graph,
                          const VisibilityMatrix& visibility);

// Same measure over an arbitrary partition of the files (`module_of[f]`
// = module index, modules numbered 0..k-1). Used to probe the measure's
// monotonicity directly.
DlReport decoupling_level(const VisibilityMatrix& visibility,
                          std::span<const std::uint32_t> module_of);

}  // namespace adx
