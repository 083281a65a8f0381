#pragma once

#include <stdexcept>
#include <string>

namespace psear {

enum class ErrorKind {
  InvalidArguments,
  UnsupportedDimension,
  GluingViolation,
  NotConstructible,
  NotCompressed,
  PreconditionViolation,
  CapacityExhausted,
  IdentityViolation,
  EtaFBoundViolation,
  InfeasibleBudget,
  BoundExceeded,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Failures that indicate a broken internal invariant rather than bad input.
  bool internal() const {
    return kind_ == ErrorKind::CapacityExhausted ||
           kind_ == ErrorKind::IdentityViolation;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace psear
