#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adx {

enum class ErrorCode {
  // core-model
  DuplicatePath,
  SelfDependency,
  DanglingEdgeEndpoint,
  InvalidSnapshot,
  // ingest
  MalformedRow,
  UnknownFormat,
  MalformedHeader,
  MalformedNumstat,
  DuplicateKey,
  InvalidPattern,
  // analyses
  EmptySystem,
  UnknownFile,
  NoBugData,
  EmptyHistory,
  InsufficientReleases,
  EmptySample,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library. `line` is set for parse errors
// (1-based line in the offending input).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }

  // True for errors caused by bad input text (CLI exit code 2).
  bool is_parse_error() const noexcept;

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace adx
