#include <cmath>

#include "doctest.h"
#include "llab/maps.hpp"
#include "llab/rng.hpp"
#include "llab/scalar_function.hpp"

using llab::FunctionFamily;
using llab::HermitianMatrix;
using llab::Rng;
using llab::ScalarFunction;

TEST_CASE("named families evaluate correctly") {
  CHECK(ScalarFunction::power(-0.5)(4.0) == doctest::Approx(0.5));
  CHECK(ScalarFunction::inverse()(2.0) == doctest::Approx(0.5));
  CHECK(ScalarFunction::power(1.0 / -2.0)(4.0) == doctest::Approx(0.5));
  CHECK(ScalarFunction::exp()(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(ScalarFunction::negexp()(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(ScalarFunction::logshift(1.0)(1.0) == doctest::Approx(std::log(2.0)));
  CHECK(ScalarFunction::affine(2.0, 3.0)(1.5) == doctest::Approx(6.0));
  CHECK(ScalarFunction::power(0.0)(123.0) == doctest::Approx(1.0));
}

TEST_CASE("evaluation guards the positive domain") {
  const ScalarFunction f = ScalarFunction::power(-0.5);
  CHECK_THROWS_AS(f(0.0), llab::NotPositiveError);
  CHECK_THROWS_AS(f(-1.0), llab::NotPositiveError);

  // A result that underflows to zero is not an error: the true value is
  // positive, the double just cannot hold it.
  CHECK(ScalarFunction::negexp()(1e6) == 0.0);
}

TEST_CASE("constructors validate parameters") {
  CHECK_THROWS_AS(ScalarFunction::logshift(0.0), llab::ConfigError);
  CHECK_THROWS_AS(ScalarFunction::logshift(-1.0), llab::ConfigError);
  CHECK_THROWS_AS(ScalarFunction::affine(-1.0, 0.0), llab::ConfigError);
  CHECK_THROWS_AS(ScalarFunction::affine(1.0, -0.5), llab::ConfigError);
  // log(t + 0.5) is negative for small t: fails the positivity grid.
  CHECK_THROWS_AS(ScalarFunction::logshift(0.5), llab::NotPositiveError);
  // affine(0, 0) is identically zero.
  CHECK_THROWS_AS(ScalarFunction::affine(0.0, 0.0), llab::NotPositiveError);
}

TEST_CASE("claims follow the family parameters") {
  auto claims = ScalarFunction::power(-0.5).claims();
  CHECK(claims.operator_decreasing);
  CHECK(claims.operator_convex);
  CHECK(claims.operator_log_convex);
  CHECK_FALSE(claims.operator_monotone);

  claims = ScalarFunction::power(0.0).claims();
  CHECK(claims.operator_monotone);
  CHECK(claims.operator_decreasing);
  CHECK(claims.operator_convex);
  CHECK(claims.operator_log_convex);

  claims = ScalarFunction::power(0.5).claims();
  CHECK(claims.operator_monotone);
  CHECK_FALSE(claims.operator_log_convex);

  claims = ScalarFunction::power(2.0).claims();
  CHECK(claims.operator_convex);
  CHECK_FALSE(claims.operator_monotone);
  CHECK_FALSE(claims.operator_decreasing);
  CHECK_FALSE(claims.operator_log_convex);

  claims = ScalarFunction::inverse().claims();
  CHECK(claims.operator_decreasing);
  CHECK(claims.operator_log_convex);

  claims = ScalarFunction::negexp().claims();
  CHECK_FALSE(claims.operator_decreasing);
  CHECK_FALSE(claims.operator_log_convex);

  // Constant functions are operator decreasing and log-convex; a genuinely
  // increasing affine map is neither.
  claims = ScalarFunction::affine(0.0, 2.0).claims();
  CHECK(claims.operator_monotone);
  CHECK(claims.operator_decreasing);
  CHECK(claims.operator_log_convex);
  claims = ScalarFunction::affine(1.0, 2.0).claims();
  CHECK(claims.operator_monotone);
  CHECK_FALSE(claims.operator_decreasing);
}

TEST_CASE("custom functions record grid failures instead of throwing") {
  const ScalarFunction dip =
      ScalarFunction::custom("dip", [](double t) { return t - 1.0; });
  CHECK_FALSE(dip.positive_on_grid());

  const ScalarFunction ok =
      ScalarFunction::custom("shifted", [](double t) { return t + 1.0; });
  CHECK(ok.positive_on_grid());
}

TEST_CASE("function spec parsing") {
  CHECK(llab::parse_function("power:-0.5").family() == FunctionFamily::Power);
  CHECK(llab::parse_function("power:-0.5").name() == "power:-0.5");
  CHECK(llab::parse_function("inverse").family() == FunctionFamily::Inverse);
  CHECK(llab::parse_function("exp").family() == FunctionFamily::Exp);
  CHECK(llab::parse_function("negexp").family() == FunctionFamily::NegExp);
  CHECK(llab::parse_function("logshift:1.5").family() ==
        FunctionFamily::LogShift);
  CHECK(llab::parse_function("affine:2,3").family() == FunctionFamily::Affine);
  CHECK(llab::parse_function("affine:2,3")(1.0) == doctest::Approx(5.0));

  CHECK_THROWS_AS(llab::parse_function(""), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("power"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("power:"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("power:abc"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("power:1.5x"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("inverse:2"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("affine:1"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("affine:1,2,3"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("sine"), llab::ParseError);
  CHECK_THROWS_AS(llab::parse_function("logshift:0"), llab::ConfigError);
}

TEST_CASE("apply_function is the spectral calculus") {
  const HermitianMatrix d = HermitianMatrix::diagonal({4, 9});
  const HermitianMatrix r =
      llab::apply_function(ScalarFunction::power(-0.5), d);
  CHECK(r(0, 0).real() == doctest::Approx(0.5));
  CHECK(r(1, 1).real() == doctest::Approx(1.0 / 3.0));

  Rng rng(31);
  const HermitianMatrix a = llab::random_spd(4, rng);

  // identity function
  const HermitianMatrix same =
      llab::apply_function(ScalarFunction::power(1.0), a);
  CHECK(llab::max_abs(same - a) <= 1e-10 * (1.0 + llab::max_abs(a)));

  // power composition
  const HermitianMatrix via_two = llab::apply_function(
      ScalarFunction::power(0.5),
      llab::apply_function(ScalarFunction::power(-1.0), a));
  const HermitianMatrix direct =
      llab::apply_function(ScalarFunction::power(-0.5), a);
  CHECK(llab::max_abs(via_two - direct) <= 1e-9 * (1.0 + llab::max_abs(direct)));

  // agreement with inv
  CHECK(llab::max_abs(llab::apply_function(ScalarFunction::inverse(), a) -
                      llab::inv(a)) <= 1e-10 * (1.0 + llab::max_abs(a)));

  // commutes with the operand
  const HermitianMatrix fa =
      llab::apply_function(ScalarFunction::exp(), 0.1 * a);
  const llab::Cmat comm = fa.mat() * a.mat() - a.mat() * fa.mat();
  CHECK(llab::max_abs(comm) <= 1e-9 * (1.0 + llab::max_abs(a)));

  // unitary covariance
  const llab::Cmat u = llab::random_unitary(4, rng);
  const HermitianMatrix left =
      llab::apply_function(ScalarFunction::power(-0.5), llab::congruence(u, a));
  const HermitianMatrix right = llab::congruence(u, direct);
  CHECK(llab::max_abs(left - right) <= 1e-9 * (1.0 + llab::max_abs(right)));

  CHECK_THROWS_AS(llab::apply_function(ScalarFunction::power(-0.5),
                                       HermitianMatrix::diagonal({1, -1})),
                  llab::NotPositiveError);
}
