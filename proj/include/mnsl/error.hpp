#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mnsl {

enum class ErrorKind {
  InvalidParams,
  NonTerminating,
  IterationCapExceeded,
  InvalidArgument,
  DegenerateData,
  NonConvergence,
  SingleClass,
  SingleClassFold,
  TooFewSamples,
  DimensionMismatch,
  Parse,
  Io,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::SingleClassFold: return "SingleClassFold";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Single exception type for the library. The kind survives re-throwing with
/// added context, so callers can match on it regardless of call depth.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same kind, message prefixed with `context: `.
  Error with_context(std::string_view context) const {
    return Error(kind_, std::string(context) + ": " + what());
  }

 private:
  ErrorKind kind_;
};

}  // namespace mnsl
