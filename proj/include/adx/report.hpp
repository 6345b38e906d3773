#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adx/analysis.hpp"
#include "adx/cochange.hpp"
#include "adx/compare.hpp"
#include "json.hpp"

namespace adx {

enum class Format { Text, Json, Csv };

std::optional<Format> parse_format(std::string_view text);

struct RenderOptions {
  Format format = Format::Text;
  int precision = 1;      // percentages
  int day_precision = 2;  // durations in days
  bool color = false;     // ANSI bold section headings in text output
};

// Fixed-point rendering, e.g. fixed(0.625 * 100, 1) == "62.5".
std::string fixed(double value, int decimals);

std::string render_coupling(const Snapshot& snapshot, const CouplingReport& report,
                            const RenderOptions& options);
std::string render_drh(const Snapshot& snapshot, const DrhStructure& drh,
                       const RenderOptions& options);
std::string render_dl(const Snapshot& snapshot, const DrhStructure& drh,
                      const DlReport& report, const RenderOptions& options);
std::string render_flaws(const Snapshot& snapshot, const FlawReport& report,
                         const RenderOptions& options);
std::string render_roots(const Snapshot& snapshot, const RootSet& roots,
                         const RenderOptions& options);
std::string render_metrics(const Snapshot& snapshot, const HistoryMetrics& metrics,
                           const RenderOptions& options);
std::string render_analysis(const Snapshot& snapshot, const Analysis& analysis,
                            const RenderOptions& options);
std::string render_comparison(const ComparisonReport& report,
                              const RenderOptions& options);

// JSON documents behind the json renderers.
nlohmann::ordered_json analysis_json(const Snapshot& snapshot, const Analysis& analysis);
nlohmann::ordered_json comparison_json(const ComparisonReport& report);

// DSM over a file subset in DRH order (layer, module, path). Cells hold the
// structural kind abbreviations and the co-change count as `<kinds>;<count>`,
// `<kinds>` or `;<count>`; the diagonal holds `(i)`.
struct DsmExport {
  std::vector<FileId> order;
  std::vector<std::vector<std::string>> cells;
};

// Throws UnknownFile for ids outside the snapshot, InvalidArgument when the
// subset is empty.
DsmExport export_dsm(const Snapshot& snapshot, std::span<const FileId> subset,
                     const CoChangeMatrix& cochange);
std::string render_dsm_csv(const Snapshot& snapshot, const DsmExport& dsm);

}  // namespace adx
