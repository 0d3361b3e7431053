#pragma once

#include <stdexcept>
#include <string>

namespace ptgl {

enum class ErrorKind {
  InvalidArg,     // bad parameters / malformed input
  InvalidState,   // unphysical covariance, negative determinant, ...
  Overflow,       // non-finite result of a propagation
  PhaseMismatch,  // asymptotic formula queried in the wrong PT phase
  DomainError,    // formula argument outside its domain
  Truncation,     // Fock-space cutoff exhausted
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace ptgl
