#pragma once

#include <stdexcept>
#include <string>

namespace llab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct NotHermitianError : Error {
  using Error::Error;
};

// A strictly-positive precondition failed (eigenvalue at or below the floor).
struct NotPositiveError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg), residual(residual) {}
  double residual;
};

struct IsometryError : Error {
  using Error::Error;
};

// The compressed inverse C*f(A)^{-1}C is not invertible at the configured
// floor. Distinct from NotPositiveError so callers can tell a precondition
// violation apart from a failed inequality.
struct InvertibilityError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  int position;
};

}  // namespace llab
