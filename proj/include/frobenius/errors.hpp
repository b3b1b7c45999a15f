#pragma once

#include <stdexcept>
#include <string>

namespace frob {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live in different rings (variable count, coefficient kind, truncation).
struct RingMismatch : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

// Precondition on degrees, modes or shapes violated.
struct DomainError : Error {
  using Error::Error;
};

// Exact linear system had no solution or was rank-deficient.
struct SolveError : Error {
  using Error::Error;
};

struct VerificationError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace frob
