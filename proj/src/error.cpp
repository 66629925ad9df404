#include "qmlfix/error.hpp"

namespace qmlfix {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownPredicate: return "unknown-predicate";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::CaptureViolation: return "capture-violation";
    case ErrorCode::DepthOverflow: return "depth-overflow";
    case ErrorCode::NotModalized: return "not-modalized";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::NotSigma: return "not-sigma";
    case ErrorCode::NotDecomposable: return "not-decomposable";
    case ErrorCode::VariableClash: return "variable-clash";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::ConstantOutsideDomain: return "constant-outside-domain";
    case ErrorCode::InvalidModel: return "invalid-model";
    case ErrorCode::UnsatisfiableSpec: return "unsatisfiable-spec";
    case ErrorCode::BoundExplosion: return "bound-explosion";
    case ErrorCode::ParameterOutsideDomain: return "parameter-outside-domain";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace qmlfix
