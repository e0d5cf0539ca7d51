#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the caller's input was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The argument is within the guard radius of a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Exact integer arithmetic would overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A numerical method could not meet its error budget within resource limits.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A computed quantity contradicts a proven property (a_n < 0, L(1,chi) <= 0, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace siegel
