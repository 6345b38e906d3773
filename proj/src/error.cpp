#include "adx/error.hpp"

namespace adx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePath: return "DuplicatePath";
    case ErrorCode::SelfDependency: return "SelfDependency";
    case ErrorCode::DanglingEdgeEndpoint: return "DanglingEdgeEndpoint";
    case ErrorCode::InvalidSnapshot: return "InvalidSnapshot";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedNumstat: return "MalformedNumstat";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::UnknownFile: return "UnknownFile";
    case ErrorCode::NoBugData: return "NoBugData";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::InsufficientReleases: return "InsufficientReleases";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(message), code_(code), line_(line) {}

bool Error::is_parse_error() const noexcept {
  switch (code_) {
    case ErrorCode::MalformedRow:
    case ErrorCode::UnknownFormat:
    case ErrorCode::MalformedHeader:
    case ErrorCode::MalformedNumstat:
    case ErrorCode::DuplicateKey:
    case ErrorCode::InvalidPattern:
    case ErrorCode::DuplicatePath:
    case ErrorCode::SelfDependency:
    case ErrorCode::DanglingEdgeEndpoint:
    case ErrorCode::InvalidSnapshot:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace adx
