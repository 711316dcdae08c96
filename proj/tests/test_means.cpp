#include <cmath>

#include "doctest.h"
#include "llab/eig.hpp"
#include "llab/maps.hpp"
#include "llab/means.hpp"
#include "llab/order.hpp"
#include "llab/rng.hpp"

using llab::Cmat;
using llab::HermitianMatrix;
using llab::Rng;
using llab::ScalarFunction;

namespace {

double rel_dev(const HermitianMatrix& a, const HermitianMatrix& b) {
  return llab::max_abs(a - b) / (1.0 + llab::max_abs(b));
}

}  // namespace

TEST_CASE("means reduce to scalar means on commuting operands") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1, 4, 9});
  const HermitianMatrix b = HermitianMatrix::diagonal({4, 4, 1});

  const HermitianMatrix g = llab::mean_geometric(a, b);
  CHECK(g(0, 0).real() == doctest::Approx(2.0));
  CHECK(g(1, 1).real() == doctest::Approx(4.0));
  CHECK(g(2, 2).real() == doctest::Approx(3.0));

  const HermitianMatrix m = llab::mean_arithmetic(a, b);
  CHECK(m(0, 0).real() == doctest::Approx(2.5));

  const HermitianMatrix h = llab::mean_harmonic(a, b);
  CHECK(h(0, 0).real() == doctest::Approx(1.6));
  CHECK(h(2, 2).real() == doctest::Approx(1.8));
}

TEST_CASE("geometric mean satisfies the Riccati identity") {
  Rng rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const int dim = 2 + rep % 4;
    const HermitianMatrix a = llab::random_spd(dim, rng);
    const HermitianMatrix b = llab::random_spd(dim, rng);
    const HermitianMatrix x = llab::mean_geometric(a, b);
    const Cmat resid = x.mat() * llab::inv(b).mat() * x.mat() - a.mat();
    CHECK(llab::max_abs(resid) <= 1e-8 * (1.0 + llab::max_abs(a)));
  }
}

TEST_CASE("AM-GM-HM ordering holds in the Loewner order") {
  Rng rng(43);
  for (int rep = 0; rep < 60; ++rep) {
    const int dim = 1 + rep % 5;
    const HermitianMatrix a = llab::random_spd(dim, rng);
    const HermitianMatrix b = llab::random_spd(dim, rng);
    const HermitianMatrix am = llab::mean_arithmetic(a, b);
    const HermitianMatrix gm = llab::mean_geometric(a, b);
    const HermitianMatrix hm = llab::mean_harmonic(a, b);
    CHECK(llab::loewner_compare_scaled(hm, gm, 1e-8).holds_le());
    CHECK(llab::loewner_compare_scaled(gm, am, 1e-8).holds_le());
  }
}

TEST_CASE("geometric mean properties") {
  Rng rng(47);
  const HermitianMatrix a = llab::random_spd(3, rng);
  const HermitianMatrix b = llab::random_spd(3, rng);

  // symmetry
  CHECK(rel_dev(llab::mean_geometric(a, b), llab::mean_geometric(b, a)) <=
        1e-9);

  // idempotence
  CHECK(rel_dev(llab::mean_geometric(a, a), a) <= 1e-9);

  // congruence equivariance: T* (A # B) T = (T*AT) # (T*BT) for invertible T
  const Cmat t = llab::random_gaussian(3, 3, rng);
  const HermitianMatrix lhs = llab::congruence(t, llab::mean_geometric(a, b));
  const HermitianMatrix rhs = llab::mean_geometric(llab::congruence(t, a),
                                                   llab::congruence(t, b));
  CHECK(rel_dev(lhs, rhs) <= 1e-8);

  // transformer inequality for a non-square contraction
  const Cmat c = llab::random_isometry(3, 2, rng);
  const HermitianMatrix left = llab::congruence(c, llab::mean_geometric(a, b));
  const HermitianMatrix right = llab::mean_geometric(llab::congruence(c, a),
                                                     llab::congruence(c, b));
  CHECK(llab::loewner_compare_scaled(left, right, 1e-8).holds_le());

  // monotonicity in both arguments
  const HermitianMatrix a2 = a + llab::random_psd(3, rng);
  const HermitianMatrix b2 = b + llab::random_psd(3, rng);
  CHECK(llab::loewner_compare_scaled(llab::mean_geometric(a, b),
                                     llab::mean_geometric(a2, b2), 1e-8)
            .holds_le());

  // joint concavity: (A nabla C) # (B nabla D) >= (A#B) nabla (C#D)
  const HermitianMatrix cc = llab::random_spd(3, rng);
  const HermitianMatrix d = llab::random_spd(3, rng);
  const HermitianMatrix big = llab::mean_geometric(
      llab::mean_arithmetic(a, cc), llab::mean_arithmetic(b, d));
  const HermitianMatrix small = llab::mean_arithmetic(
      llab::mean_geometric(a, b), llab::mean_geometric(cc, d));
  CHECK(llab::loewner_compare_scaled(small, big, 1e-8).holds_le());

  // norm continuity under a small perturbation
  const HermitianMatrix nudged =
      llab::mean_geometric(a + 1e-9 * HermitianMatrix::identity(3), b);
  CHECK(llab::max_abs(nudged - llab::mean_geometric(a, b)) <= 1e-6);
}

TEST_CASE("kubo_ando_mean recovers the standard representing functions") {
  Rng rng(53);
  const HermitianMatrix a = llab::random_spd(4, rng);
  const HermitianMatrix b = llab::random_spd(4, rng);

  const HermitianMatrix via_sqrt =
      llab::kubo_ando_mean(ScalarFunction::power(0.5), a, b);
  CHECK(rel_dev(via_sqrt, llab::mean_geometric(a, b)) <= 1e-10);

  const ScalarFunction arith = ScalarFunction::affine(0.5, 0.5);
  CHECK(rel_dev(llab::kubo_ando_mean(arith, a, b),
                llab::mean_arithmetic(a, b)) <= 1e-10);

  const ScalarFunction harm = ScalarFunction::custom(
      "2t/(1+t)", [](double t) { return 2.0 * t / (1.0 + t); });
  CHECK(rel_dev(llab::kubo_ando_mean(harm, a, b), llab::mean_harmonic(a, b)) <=
        1e-10);

  // h(t) = t picks out the first argument, h(t) = 1 the second.
  CHECK(rel_dev(llab::kubo_ando_mean(ScalarFunction::power(1.0), a, b), a) <=
        1e-9);
  CHECK(rel_dev(llab::kubo_ando_mean(ScalarFunction::power(0.0), a, b), b) <=
        1e-9);
}

TEST_CASE("perspective extends the function calculus") {
  Rng rng(59);
  const ScalarFunction f = ScalarFunction::power(-0.5);
  const HermitianMatrix a = llab::random_spd(3, rng);
  const HermitianMatrix b = llab::random_spd(3, rng);

  // g(A, I) = f(A)
  CHECK(rel_dev(llab::perspective(f, a, HermitianMatrix::identity(3)),
                llab::apply_function(f, a)) <= 1e-9);

  // one-homogeneity
  const HermitianMatrix scaled = llab::perspective(f, 3.0 * a, 3.0 * b);
  CHECK(rel_dev(scaled, 3.0 * llab::perspective(f, a, b)) <= 1e-9);

  // commuting case: g(diag(s), diag(t)) = diag(t f(s/t))
  const HermitianMatrix ds = HermitianMatrix::diagonal({1, 4});
  const HermitianMatrix dt = HermitianMatrix::diagonal({4, 2});
  const HermitianMatrix g = llab::perspective(f, ds, dt);
  CHECK(g(0, 0).real() == doctest::Approx(4.0 * f(0.25)));
  CHECK(g(1, 1).real() == doctest::Approx(2.0 * f(2.0)));
}

TEST_CASE("means and perspectives guard their domains") {
  const HermitianMatrix good = HermitianMatrix::identity(2);
  const HermitianMatrix bad = HermitianMatrix::diagonal({1, 0});
  CHECK_THROWS_AS(llab::mean_geometric(good, bad), llab::NotPositiveError);
  CHECK_THROWS_AS(llab::mean_harmonic(bad, good), llab::NotPositiveError);
  CHECK_THROWS_AS(llab::mean_geometric(good, HermitianMatrix::identity(3)),
                  llab::DimensionError);

  const ScalarFunction dip =
      ScalarFunction::custom("dip", [](double t) { return t - 1.0; });
  CHECK_THROWS_AS(llab::kubo_ando_mean(dip, good, good),
                  llab::NotPositiveError);
  CHECK_THROWS_AS(llab::perspective(dip, good, good), llab::NotPositiveError);
}
