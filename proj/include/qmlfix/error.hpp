#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmlfix {

// Reason codes double as the machine-readable tag the CLI prints on failure.
enum class ErrorCode {
  Syntax,
  UnknownPredicate,
  ArityMismatch,
  CaptureViolation,
  DepthOverflow,
  NotModalized,
  NotNormalized,
  NotSigma,
  NotDecomposable,
  VariableClash,
  UnboundVariable,
  ConstantOutsideDomain,
  InvalidModel,
  UnsatisfiableSpec,
  BoundExplosion,
  ParameterOutsideDomain,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qmlfix
