#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adx/cochange.hpp"
#include "adx/graph.hpp"
#include "adx/model.hpp"
#include "adx/snapshot.hpp"
#include "adx/visibility.hpp"

namespace adx {

enum class FlawKind : std::uint8_t {
  Clique,
  PackageCycle,
  ImproperInheritance,
  ModularityViolation,
  Crossing,
  UnstableInterface,
};

inline constexpr std::array<FlawKind, 6> kAllFlawKinds = {
    FlawKind::Clique,           FlawKind::PackageCycle,
    FlawKind::ImproperInheritance, FlawKind::ModularityViolation,
    FlawKind::Crossing,         FlawKind::UnstableInterface};

std::string_view to_string(FlawKind kind);       // "clique", ...
std::optional<FlawKind> parse_flaw_kind(std::string_view text);
// Row labels in the report tables ("cliques", "unhealthy inheritance", ...).
std::string_view report_noun(FlawKind kind);

struct Thresholds {
  std::uint32_t cochange_min = 2;
  std::uint32_t unstable_partner_min = 5;
  std::uint32_t crossing_fanin_min = 4;
  std::uint32_t crossing_fanout_min = 4;
  std::uint32_t unstable_influence_min = 1;
  // Modularity violations excuse transitively dependent pairs too.
  bool transitive_modularity = false;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

// Flat `key=value` document with the Thresholds field names; `#` starts a
// comment. Throws MalformedRow / InvalidArgument.
Thresholds parse_thresholds(std::string_view text);
std::string write_thresholds(const Thresholds& thresholds);

struct FlawInstance {
  FlawKind kind = FlawKind::Clique;
  // Files defining the instance (sorted). Empty for package cycles.
  std::vector<FileId> anchor_files;
  // Packages defining the instance (sorted); package cycles only.
  std::vector<std::string> anchor_packages;
  // Influenced files (sorted, non-empty, superset of anchor_files).
  std::vector<FileId> scope;
  // Kind-specific evidence: the edges or co-change counts behind it.
  std::vector<std::pair<std::string, std::int64_t>> evidence;
  // Improper inheritance: 1 = parent depends on child, 2 = client uses both.
  int inheritance_case = 0;

  friend bool operator==(const FlawInstance&, const FlawInstance&) = default;
};

std::vector<FlawInstance> detect_cliques(const DependencyGraph& graph);
std::vector<FlawInstance> detect_package_cycles(
    const DependencyGraph& graph, const std::vector<FileNode>& files);
std::vector<FlawInstance> detect_improper_inheritance(
    const DependencyGraph& graph);
std::vector<FlawInstance> detect_modularity_violations(
    const DependencyGraph& graph, const CoChangeMatrix& cochange,
    const Thresholds& thresholds = {});
// Same, excusing pairs related through the visibility matrix.
std::vector<FlawInstance> detect_modularity_violations(
    const DependencyGraph& graph, const CoChangeMatrix& cochange,
    const VisibilityMatrix& visibility, const Thresholds& thresholds);
std::vector<FlawInstance> detect_crossings(const DependencyGraph& graph,
                                           const CoChangeMatrix& cochange,
                                           const Thresholds& thresholds = {});
std::vector<FlawInstance> detect_unstable_interfaces(
    const DependencyGraph& graph, const VisibilityMatrix& visibility,
    const CoChangeMatrix& cochange, const Thresholds& thresholds = {});

struct FlawKindSummary {
  std::size_t instances = 0;
  std::size_t influenced_files = 0;  // |union of scopes|
};

struct FlawReport {
  std::map<FlawKind, std::vector<FlawInstance>> instances;
  std::map<FlawKind, FlawKindSummary> summary;
  // Files in the scope of at least one instance of any kind.
  std::size_t influenced_files_any = 0;
  // Number of instances (any kind) whose scope contains the file.
  std::vector<std::uint32_t> participation;

  const std::vector<FlawInstance>& of(FlawKind kind) const;
};

FlawReport flaw_report(const Snapshot& snapshot,
                       const Thresholds& thresholds = {});
FlawReport flaw_report(const Snapshot& snapshot, const Thresholds& thresholds,
                       const VisibilityMatrix& visibility,
                       const CoChangeMatrix& cochange);

}  // namespace adx
