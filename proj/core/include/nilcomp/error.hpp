#pragma once

#include <stdexcept>
#include <string>

namespace nilcomp {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  DimMismatch,
  ArityMismatch,
  GroupMismatch,
  NonSurjective,
  TooLarge,
  NotPolynomial,
  FiltrationViolation,
  PreconditionFailed,
  BadExponents,
  PeriodMismatch,
  NotInvariant,
  DiscrepancyNotAbelian,
};

const char* to_string(ErrorKind kind) noexcept;

/// Domain error raised by every nilcomp operation. The kind names the
/// contract that was violated; what() carries a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace nilcomp
