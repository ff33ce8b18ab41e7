#include "cyclerank/errors.hpp"

namespace cyclerank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::InvalidSubfield: return "InvalidSubfield";
    case ErrorCode::InvolutionNotSupported: return "InvolutionNotSupported";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::IdentityAutomorphism: return "IdentityAutomorphism";
    case ErrorCode::NotInEigenspace: return "NotInEigenspace";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::NotSquareFree: return "NotSquareFree";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

}  // namespace cyclerank
