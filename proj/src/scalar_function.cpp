#include "llab/scalar_function.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace llab {

namespace {

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

FunctionClaims power_claims(double p) {
  FunctionClaims c;
  if (p == 0.0) {
    c.operator_monotone = true;
    c.operator_decreasing = true;
    c.operator_convex = true;
    c.operator_log_convex = true;
  } else if (p >= -1.0 && p < 0.0) {
    c.operator_decreasing = true;
    c.operator_convex = true;
    c.operator_log_convex = true;
  } else if (p > 0.0 && p <= 1.0) {
    c.operator_monotone = true;
  } else if (p > 1.0 && p <= 2.0) {
    c.operator_convex = true;
  }
  return c;
}

}  // namespace

ScalarFunction::ScalarFunction(FunctionFamily family, std::string name,
                               std::function<double(double)> fn,
                               FunctionClaims claims, bool grid_failure_is_error)
    : family_(family), name_(std::move(name)), fn_(std::move(fn)), claims_(claims) {
  // 49 log-spaced grid points across 1e-6 .. 1e6.
  for (int k = 0; k <= 48; ++k) {
    const double t = std::pow(10.0, -6.0 + 12.0 * k / 48.0);
    try {
      (*this)(t);
    } catch (const NotPositiveError& e) {
      if (grid_failure_is_error)
        throw NotPositiveError(name_ + ": positivity grid check failed: " +
                               e.what());
      positive_on_grid_ = false;
      return;
    }
  }
}

double ScalarFunction::operator()(double t) const {
  if (!(t > 0.0))
    throw NotPositiveError(name_ + ": argument must be > 0, got " +
                           fmt_double(t));
  std::feclearexcept(FE_UNDERFLOW);
  const double v = fn_(t);
  if (!(v > 0.0)) {
    // A positive value that gradually underflows to zero still counts; a
    // genuine zero, negative, or NaN does not.
    if (v == 0.0 && std::fetestexcept(FE_UNDERFLOW)) return v;
    throw NotPositiveError(name_ + " evaluated to " + fmt_double(v) + " at t=" +
                           fmt_double(t));
  }
  return v;
}

ScalarFunction ScalarFunction::power(double p) {
  return ScalarFunction(FunctionFamily::Power, "power:" + fmt_double(p),
                        [p](double t) { return std::pow(t, p); },
                        power_claims(p), true);
}

ScalarFunction ScalarFunction::inverse() {
  FunctionClaims c;
  c.operator_decreasing = true;
  c.operator_convex = true;
  c.operator_log_convex = true;
  return ScalarFunction(FunctionFamily::Inverse, "inverse",
                        [](double t) { return 1.0 / t; }, c, true);
}

ScalarFunction ScalarFunction::exp() {
  return ScalarFunction(FunctionFamily::Exp, "exp",
                        [](double t) { return std::exp(t); }, FunctionClaims{},
                        true);
}

ScalarFunction ScalarFunction::negexp() {
  return ScalarFunction(FunctionFamily::NegExp, "negexp",
                        [](double t) { return std::exp(-t); }, FunctionClaims{},
                        true);
}

ScalarFunction ScalarFunction::logshift(double c) {
  if (!(c > 0.0))
    throw ConfigError("logshift: shift must be > 0, got " + fmt_double(c));
  FunctionClaims cl;
  cl.operator_monotone = true;
  return ScalarFunction(FunctionFamily::LogShift, "logshift:" + fmt_double(c),
                        [c](double t) { return std::log(t + c); }, cl, true);
}

ScalarFunction ScalarFunction::affine(double a, double b) {
  if (a < 0.0 || b < 0.0)
    throw ConfigError("affine: coefficients must be >= 0, got a=" +
                      fmt_double(a) + " b=" + fmt_double(b));
  FunctionClaims c;
  c.operator_monotone = true;
  c.operator_convex = true;
  if (a == 0.0) {
    c.operator_decreasing = true;
    c.operator_log_convex = true;
  }
  return ScalarFunction(FunctionFamily::Affine,
                        "affine:" + fmt_double(a) + "," + fmt_double(b),
                        [a, b](double t) { return a * t + b; }, c, true);
}

ScalarFunction ScalarFunction::custom(std::string name,
                                      std::function<double(double)> fn,
                                      FunctionClaims claims) {
  return ScalarFunction(FunctionFamily::Custom, std::move(name), std::move(fn),
                        claims, false);
}

namespace {

double parse_number(const std::string& spec, size_t& pos) {
  size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(spec.substr(pos), &consumed);
  } catch (const std::exception&) {
    throw ParseError("expected a number in function spec '" + spec + "'", pos);
  }
  pos += consumed;
  return v;
}

}  // namespace

ScalarFunction parse_function(const std::string& spec) {
  const size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);

  if (head == "inverse" || head == "exp" || head == "negexp") {
    if (colon != std::string::npos)
      throw ParseError("'" + head + "' takes no parameter", colon);
    if (head == "inverse") return ScalarFunction::inverse();
    if (head == "exp") return ScalarFunction::exp();
    return ScalarFunction::negexp();
  }

  if (head == "power" || head == "logshift" || head == "affine") {
    if (colon == std::string::npos)
      throw ParseError("'" + head + "' needs a ':' parameter", spec.size());
    size_t pos = colon + 1;
    const double first = parse_number(spec, pos);
    if (head == "affine") {
      if (pos >= spec.size() || spec[pos] != ',')
        throw ParseError("affine needs two comma-separated parameters", pos);
      ++pos;
      const double second = parse_number(spec, pos);
      if (pos != spec.size())
        throw ParseError("trailing characters in function spec", pos);
      return ScalarFunction::affine(first, second);
    }
    if (pos != spec.size())
      throw ParseError("trailing characters in function spec", pos);
    return head == "power" ? ScalarFunction::power(first)
                           : ScalarFunction::logshift(first);
  }

  throw ParseError("unknown function family '" + head + "'", 0);
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a,
                               double floor) {
  const SpectralDecomposition s = eig_hermitian(a);
  if (s.min_eigenvalue() <= floor)
    throw NotPositiveError("apply_function(" + f.name() + "): min eigenvalue " +
                           std::to_string(s.min_eigenvalue()) +
                           " at or below floor " + std::to_string(floor));
  return s.rebuild([&f](double t) { return f(t); });
}

}  // namespace llab
