#pragma once

#include <functional>
#include <string>

#include "llab/eig.hpp"
#include "llab/matrix.hpp"

namespace llab {

enum class FunctionFamily { Power, Inverse, Exp, NegExp, LogShift, Affine, Custom };

// Classification flags a function is claimed to satisfy. Claims are
// metadata for the classifier and the campaign planner to test; no check
// trusts them for correctness of its own arithmetic.
struct FunctionClaims {
  bool operator_monotone = false;
  bool operator_decreasing = false;
  bool operator_convex = false;
  bool operator_log_convex = false;
};

// A named positive function on (0, infinity). Named families are verified
// strictly positive on a log-spaced grid 1e-6..1e6 at construction and fail
// construction otherwise. Custom callables run the same grid check but are
// admitted either way; positive_on_grid() reports the outcome so operations
// whose contracts need positivity can refuse them.
class ScalarFunction {
 public:
  static ScalarFunction power(double p);
  static ScalarFunction inverse();
  static ScalarFunction exp();
  static ScalarFunction negexp();
  static ScalarFunction logshift(double c);
  static ScalarFunction affine(double a, double b);
  static ScalarFunction custom(std::string name, std::function<double(double)> fn,
                               FunctionClaims claims = {});

  // Evaluation. Throws on t <= 0, and on a non-positive result unless the
  // true value merely underflowed to zero (e.g. exp(-t) for huge t).
  double operator()(double t) const;

  FunctionFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  const FunctionClaims& claims() const { return claims_; }
  bool positive_on_grid() const { return positive_on_grid_; }

 private:
  ScalarFunction(FunctionFamily family, std::string name,
                 std::function<double(double)> fn, FunctionClaims claims,
                 bool grid_failure_is_error);

  FunctionFamily family_;
  std::string name_;
  std::function<double(double)> fn_;
  FunctionClaims claims_;
  bool positive_on_grid_ = true;
};

// Spec strings: "power:-0.5", "inverse", "exp", "negexp", "logshift:1.0",
// "affine:a,b". Throws ParseError with the offending position.
ScalarFunction parse_function(const std::string& spec);

// Spectral calculus f(A) = V diag(f(lambda_i)) V*. Requires min eigenvalue
// above `floor`.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a,
                               double floor = kDefaultEigFloor);

}  // namespace llab
