#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "adx/model.hpp"

namespace adx {

// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM:SS` and `YYYY-MM-DD HH:MM:SS`
// optionally followed by fractional seconds and a zone (`Z`, `+HH:MM`,
// `+HHMM`, ` +HHMM`). A missing zone means UTC. Result is normalized to UTC.
std::optional<UnixSeconds> parse_iso8601(std::string_view text);

// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(UnixSeconds t);

inline constexpr double kSecondsPerDay = 86400.0;

}  // namespace adx
