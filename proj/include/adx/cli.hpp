#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adx {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point of `adx`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adx
