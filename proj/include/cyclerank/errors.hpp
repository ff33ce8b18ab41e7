#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclerank {

enum class ErrorCode {
  InvalidPrime,
  InvalidDegree,
  ReducibleModulus,
  DivisionByZero,
  ContextMismatch,
  InvalidSubfield,
  InvolutionNotSupported,
  ZeroElement,
  IdentityAutomorphism,
  NotInEigenspace,
  WrongShape,
  HypothesisViolation,
  NotSquareFree,
  SizeLimit,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
///
/// WrongShape and HypothesisViolation are usage errors (the instance does not
/// satisfy the statement being checked). InternalInconsistency means two
/// computation routes that must agree did not; it indicates a bug, never bad
/// input.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw MathError(code, what);
}

}  // namespace cyclerank
