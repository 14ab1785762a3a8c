#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vizstate {

enum class ErrorCode {
  MalformedDocument,
  SchemaViolation,
  UnknownPlot,
  InvalidRange,
  CurveOutOfRange,
  UnknownInteraction,
  UnknownSeries,
  NotApplicable,
  UnknownTool,
  InvalidArgs,
  UnknownFigure,
  IndexOutOfRange,
  EmptyCloud,
  IoError,
};

/// Stable wire-level spelling of an error code (e.g. "UNKNOWN_PLOT").
constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MALFORMED_DOCUMENT";
    case ErrorCode::SchemaViolation: return "SCHEMA_VIOLATION";
    case ErrorCode::UnknownPlot: return "UNKNOWN_PLOT";
    case ErrorCode::InvalidRange: return "INVALID_RANGE";
    case ErrorCode::CurveOutOfRange: return "CURVE_OUT_OF_RANGE";
    case ErrorCode::UnknownInteraction: return "UNKNOWN_INTERACTION";
    case ErrorCode::UnknownSeries: return "UNKNOWN_SERIES";
    case ErrorCode::NotApplicable: return "NOT_APPLICABLE";
    case ErrorCode::UnknownTool: return "UNKNOWN_TOOL";
    case ErrorCode::InvalidArgs: return "INVALID_ARGS";
    case ErrorCode::UnknownFigure: return "UNKNOWN_FIGURE";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::EmptyCloud: return "EMPTY_CLOUD";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace vizstate
