#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "llab/harness.hpp"
#include "llab/io.hpp"
#include "llab/rng.hpp"

using llab::CampaignConfig;
using llab::ChainVerdicts;
using llab::ClassifyConfig;
using llab::HermitianMatrix;
using llab::MeanSelector;
using llab::Rng;
using llab::ScalarFunction;

TEST_CASE("single checks hold for an operator decreasing function") {
  Rng rng(0xc0ffee);
  const ScalarFunction f = ScalarFunction::power(-0.5);
  for (int rep = 0; rep < 25; ++rep) {
    const int dim = 1 + rep % 5;
    const HermitianMatrix a = llab::random_spd(dim, rng);
    const HermitianMatrix b = llab::random_spd(dim, rng);

    CHECK(llab::check_log_convex_def(f, a, b).holds_le());
    CHECK(llab::check_mean_variant(f, MeanSelector::Nabla, a, b).holds_le());
    CHECK(llab::check_mean_variant(f, MeanSelector::Sharp, a, b).holds_le());
    CHECK(
        llab::check_mean_variant(f, MeanSelector::Harmonic, a, b).holds_le());
    const ScalarFunction logmean = ScalarFunction::custom(
        "logmean", [](double t) {
          return std::abs(t - 1.0) < 1e-6 ? 1.0 + (t - 1.0) / 2.0
                                          : (t - 1.0) / std::log(t);
        });
    CHECK(llab::check_mean_variant(f, logmean, a, b).holds_le());
    CHECK(llab::check_operator_decreasing(f, a, a + llab::random_psd(dim, rng))
              .holds_le());

    const llab::Cmat c = llab::random_isometry(dim, (dim + 1) / 2, rng);
    CHECK(llab::check_isometry_jensen(f, a, c).holds_le());

    const ChainVerdicts sandwich = llab::check_isometry_sandwich(f, a, c);
    CHECK(sandwich.links.size() == 2);
    CHECK(sandwich.all_le());

    const ChainVerdicts sub = llab::check_subadditivity(f, a, b);
    CHECK(sub.links.size() == 4);
    CHECK(sub.all_le());
    CHECK(sub.min_witness() >= -1e-10);
  }
}

TEST_CASE("map-based checks validate their preconditions") {
  Rng rng(0xdead);
  const ScalarFunction f = ScalarFunction::inverse();
  const HermitianMatrix a = llab::random_spd(4, rng);

  const llab::PositiveLinearMap phi =
      llab::random_map(llab::PositiveLinearMap::Kind::Kraus, 4, 2, rng);
  CHECK(llab::check_sharp_cdj(f, phi, a).all_le());
  CHECK_THROWS_AS(llab::check_sharp_cdj(f, phi.scaled(0.5), a),
                  llab::ConfigError);

  CHECK(llab::check_power_corollary_1(phi, a, 0.5).all_le());
  CHECK(llab::check_power_corollary_1(phi, a, 0.0).all_le());
  CHECK(llab::check_power_corollary_1(phi, a, 1.0).all_le());
  CHECK_THROWS_AS(llab::check_power_corollary_1(phi, a, 1.5),
                  llab::ConfigError);

  CHECK(llab::check_power_corollary_2(phi, a, -1.0).all_le());
  CHECK(llab::check_power_corollary_2(phi, a, -2.5).all_le());
  CHECK_THROWS_AS(llab::check_power_corollary_2(phi, a, -0.5),
                  llab::ConfigError);

  // multi-isometry needs a genuine resolution of identity
  const auto cs = llab::random_unital_kraus(4, 4, 3, rng);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) as.push_back(llab::random_spd(4, rng));
  CHECK(llab::check_multi_isometry(f, as, cs).holds_le());
  auto broken = cs;
  broken.pop_back();
  as.pop_back();
  CHECK_THROWS_AS(llab::check_multi_isometry(f, as, broken),
                  llab::IsometryError);

  // isometry checks reject a non-isometry
  CHECK_THROWS_AS(
      llab::check_isometry_jensen(f, a, llab::random_gaussian(4, 2, rng)),
      llab::IsometryError);
}

TEST_CASE("constant functions and dim-1 operands run through every check") {
  const ScalarFunction konst = ScalarFunction::affine(0.0, 2.0);
  Rng rng(0xface);
  const HermitianMatrix a1 = llab::random_spd(1, rng);
  const HermitianMatrix b1 = llab::random_spd(1, rng);
  CHECK(llab::check_log_convex_def(konst, a1, b1).holds_le());
  CHECK(llab::check_subadditivity(konst, a1, b1).all_le());

  for (const std::string& name : llab::check_names()) {
    const auto out = llab::run_check_trial(name, konst, 1, 12345, 1e-8,
                                           llab::kDefaultEigFloor);
    CHECK_FALSE(out.violated);
    const auto out2 = llab::run_check_trial(
        name, ScalarFunction::power(-0.5), 1, 999, 1e-8,
        llab::kDefaultEigFloor);
    CHECK_FALSE(out2.violated);
  }
}

TEST_CASE("classifier reports no counterexamples for power -1/2") {
  ClassifyConfig cfg;
  cfg.dims = {2, 3};
  cfg.trials = 40;
  const auto verdict = llab::classify(ScalarFunction::power(-0.5), cfg);
  CHECK(verdict.probes.size() == 4);
  CHECK_FALSE(verdict.any_counterexample());
  CHECK(verdict.cross_probe_consistent());
  for (const auto& probe : verdict.probes) CHECK(probe.trials == 80);
}

TEST_CASE("classifier finds counterexamples for power 2 on every probe") {
  ClassifyConfig cfg;
  cfg.dims = {2};
  cfg.trials = 400;
  const auto verdict = llab::classify(ScalarFunction::power(2.0), cfg);
  CHECK(verdict.any_counterexample());
  CHECK(verdict.cross_probe_consistent());
  for (const auto& probe : verdict.probes) {
    REQUIRE(probe.counterexample.has_value());
    CHECK(probe.counterexample->min_eig < 0.0);
    CHECK(probe.trials <= 400);
  }
}

TEST_CASE("campaign finds violations for known-bad functions, with replayable"
          " witnesses") {
  CampaignConfig cfg;
  cfg.checks = {"log-convex-def"};
  cfg.dims = {2};
  cfg.trials = 1000;
  cfg.function = "power:2";
  const auto results = llab::run_campaign(cfg);
  REQUIRE(results.size() == 1);
  CHECK(results[0].trials == 1000);
  REQUIRE(results[0].failures.size() > 0);

  const ScalarFunction f = llab::parse_function(cfg.function);
  for (std::size_t i = 0; i < std::min<std::size_t>(5, results[0].failures.size());
       ++i) {
    const auto& rec = results[0].failures[i];
    const auto replay = llab::run_check_trial(
        "log-convex-def", f, rec.dims[0], rec.seed, cfg.rel_tol, cfg.floor);
    CHECK(replay.violated);
    CHECK(replay.witness_min_eig == doctest::Approx(rec.witness_min_eig));
    CHECK(replay.witness_min_eig < -1e-6);
  }

  CampaignConfig neg;
  neg.checks = {"operator-decreasing"};
  neg.dims = {2};
  neg.trials = 1000;
  neg.function = "negexp";
  const auto neg_results = llab::run_campaign(neg);
  REQUIRE(neg_results.size() == 1);
  CHECK(neg_results[0].failures.size() > 0);
}

TEST_CASE("campaign results are deterministic and thread-count invariant") {
  CampaignConfig cfg;
  cfg.checks = {"log-convex-def", "mean-sharp", "theta-first-arg",
                "quadratic-form"};
  cfg.dims = {2, 3};
  cfg.trials = 20;
  cfg.seed = 42;

  const std::string once = llab::report_lines(llab::run_campaign(cfg));
  const std::string twice = llab::report_lines(llab::run_campaign(cfg));
  CHECK(once == twice);

  setenv("LOEWNER_LAB_THREADS", "1", 1);
  const std::string serial = llab::report_lines(llab::run_campaign(cfg));
  setenv("LOEWNER_LAB_THREADS", "7", 1);
  const std::string wide = llab::report_lines(llab::run_campaign(cfg));
  unsetenv("LOEWNER_LAB_THREADS");
  CHECK(serial == once);
  CHECK(wide == once);

  setenv("LOEWNER_LAB_THREADS", "zero", 1);
  CHECK_THROWS_AS(llab::run_campaign(cfg), llab::ConfigError);
  unsetenv("LOEWNER_LAB_THREADS");
}

TEST_CASE("campaign validates its configuration") {
  CampaignConfig cfg;
  cfg.checks = {"no-such-check"};
  CHECK_THROWS_AS(llab::run_campaign(cfg), llab::ConfigError);

  cfg.checks = {};
  CHECK(llab::run_campaign(cfg).empty());

  cfg.checks = {"mean-sharp"};
  cfg.function = "power:oops";
  CHECK_THROWS_AS(llab::run_campaign(cfg), llab::ParseError);

  CHECK_THROWS_AS(
      llab::run_check_trial("nope", ScalarFunction::inverse(), 2, 1, 1e-8,
                            llab::kDefaultEigFloor),
      llab::ConfigError);
}

TEST_CASE("scaling leaves log-convexity verdicts unchanged") {
  Rng rng(0xaaa);
  const ScalarFunction f = ScalarFunction::power(-0.5);
  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix a = llab::random_spd(3, rng);
    const HermitianMatrix b = llab::random_spd(3, rng);
    const auto base = llab::check_log_convex_def(f, a, b);
    const auto scaled = llab::check_log_convex_def(f, 1e3 * a, 1e3 * b);
    CHECK(base.holds_le() == scaled.holds_le());
  }
}

TEST_CASE("worked example fixture matches the reference values") {
  const llab::WorkedExample ex = llab::worked_example();
  REQUIRE(ex.reference.size() == 3);
  CHECK(ex.a.dim() == 3);
  CHECK(ex.phi.out_dim() == 2);

  const HermitianMatrix fa = llab::apply_function(ex.f, ex.a);
  const HermitianMatrix first = llab::apply_function(ex.f, ex.phi(ex.a));
  const HermitianMatrix mid = llab::inv(ex.phi(llab::inv(fa)));
  const HermitianMatrix last = ex.phi(fa);

  CHECK(llab::max_abs(first - ex.reference[0]) <= 5e-4);
  CHECK(llab::max_abs(mid - ex.reference[1]) <= 5e-4);
  CHECK(llab::max_abs(last - ex.reference[2]) <= 5e-4);

  // Full-precision anchors from a 40-digit computation.
  CHECK(first(0, 0).real() == doctest::Approx(1.1944775825843852).epsilon(1e-12));
  CHECK(mid(0, 1).real() == doctest::Approx(-0.29323362788537403).epsilon(1e-12));
  CHECK(last(1, 1).real() == doctest::Approx(0.72337571675499884).epsilon(1e-12));

  CHECK(llab::loewner_compare(first, mid).holds_le());
  CHECK(llab::loewner_compare(mid, last).holds_le());
}

TEST_CASE("default campaign passes for the flagship function") {
  CampaignConfig cfg;
  cfg.checks = llab::check_names();
  cfg.dims = {2, 3};
  cfg.trials = 15;
  const auto results = llab::run_campaign(cfg);
  CHECK(results.size() == llab::check_names().size());
  for (const auto& res : results) {
    CHECK(res.trials == 30);
    CHECK(res.failures.empty());
    CHECK(res.worst_slack > -1e-10);
  }
}
