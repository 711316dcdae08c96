#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "llab/divergence.hpp"
#include "llab/maps.hpp"
#include "llab/means.hpp"
#include "llab/order.hpp"
#include "llab/rng.hpp"
#include "llab/scalar_function.hpp"

namespace llab {

// ---------------------------------------------------------------------------
// Single-instance inequality checks. Each computes both sides explicitly and
// returns full verdicts; the expected relation is LessOrEqual (or Equal) when
// the function carries the matching claim, and sweeps call the same entry
// points with unclaimed functions to hunt counterexamples.
// ---------------------------------------------------------------------------

// f(A nabla B) <= f(A) # f(B)
LoewnerVerdict check_log_convex_def(const ScalarFunction& f,
                                    const HermitianMatrix& a,
                                    const HermitianMatrix& b,
                                    double rel_tol = 1e-8,
                                    double floor = kDefaultEigFloor);

enum class MeanSelector { Nabla, Sharp, Harmonic };

const char* to_string(MeanSelector s);

// f(A nabla B) <= f(A) sigma f(B)
LoewnerVerdict check_mean_variant(const ScalarFunction& f, MeanSelector sigma,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b,
                                  double rel_tol = 1e-8,
                                  double floor = kDefaultEigFloor);

// Same with sigma the Kubo-Ando mean represented by h.
LoewnerVerdict check_mean_variant(const ScalarFunction& f,
                                  const ScalarFunction& h,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b,
                                  double rel_tol = 1e-8,
                                  double floor = kDefaultEigFloor);

// Caller guarantees a <= b (built as b = a + PSD); verifies f(b) <= f(a).
LoewnerVerdict check_operator_decreasing(const ScalarFunction& f,
                                         const HermitianMatrix& a,
                                         const HermitianMatrix& b,
                                         double rel_tol = 1e-8,
                                         double floor = kDefaultEigFloor);

// f(C*AC) <= (C* f(A)^{-1} C)^{-1} for an isometry C (in x out). Throws
// InvertibilityError when C* f(A)^{-1} C is not invertible at the floor.
LoewnerVerdict check_isometry_jensen(const ScalarFunction& f,
                                     const HermitianMatrix& a, const Cmat& c,
                                     double rel_tol = 1e-8,
                                     double floor = kDefaultEigFloor);

// An inequality chain; link i compares expression i against expression i+1.
struct ChainVerdicts {
  std::vector<LoewnerVerdict> links;

  bool all_le() const {
    for (const LoewnerVerdict& v : links)
      if (!v.holds_le()) return false;
    return true;
  }
  double min_witness() const {
    double w = std::numeric_limits<double>::infinity();
    for (const LoewnerVerdict& v : links)
      w = std::min(w, v.min_eig_rhs_minus_lhs);
    return w;
  }
};

// f(C*AC) <= (C* f(A)^{-1} C)^{-1} <= C* f(A) C
ChainVerdicts check_isometry_sandwich(const ScalarFunction& f,
                                      const HermitianMatrix& a, const Cmat& c,
                                      double rel_tol = 1e-8,
                                      double floor = kDefaultEigFloor);

// f(sum_i C_i* A_i C_i) <= (sum_i C_i* f(A_i)^{-1} C_i)^{-1} given
// sum_i C_i* C_i = I.
LoewnerVerdict check_multi_isometry(const ScalarFunction& f,
                                    const std::vector<HermitianMatrix>& a_list,
                                    const std::vector<Cmat>& c_list,
                                    double rel_tol = 1e-8,
                                    double floor = kDefaultEigFloor);

// f(Phi(A)) <= Phi(f(A)^{-1})^{-1} <= Phi(f(A)) for unital Phi.
ChainVerdicts check_sharp_cdj(const ScalarFunction& f,
                              const PositiveLinearMap& phi,
                              const HermitianMatrix& a, double rel_tol = 1e-8,
                              double floor = kDefaultEigFloor);

// Phi(A)^{-alpha} <= Phi(A^alpha)^{-1} <= Phi(A^{-alpha}), 0 <= alpha <= 1.
ChainVerdicts check_power_corollary_1(const PositiveLinearMap& phi,
                                      const HermitianMatrix& a, double alpha,
                                      double rel_tol = 1e-8,
                                      double floor = kDefaultEigFloor);

// Phi(A^alpha)^{1/alpha} <= Phi(A^{-1})^{-1} <= Phi(A), alpha <= -1.
ChainVerdicts check_power_corollary_2(const PositiveLinearMap& phi,
                                      const HermitianMatrix& a, double alpha,
                                      double rel_tol = 1e-8,
                                      double floor = kDefaultEigFloor);

// f(sum_i Phi_i(A_i)) <= (sum_i Phi_i(f(A_i)^{-1}))^{-1} given
// sum_i Phi_i(I) = I.
LoewnerVerdict check_sum_of_maps(const ScalarFunction& f,
                                 const std::vector<PositiveLinearMap>& maps,
                                 const std::vector<HermitianMatrix>& a_list,
                                 double rel_tol = 1e-8,
                                 double floor = kDefaultEigFloor);

// f(A+B) <= f(2A)#f(2B) <= f(A)#f(B) <= f(A) nabla f(B) <= f(A)+f(B)
ChainVerdicts check_subadditivity(const ScalarFunction& f,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b,
                                  double rel_tol = 1e-8,
                                  double floor = kDefaultEigFloor);

// ---------------------------------------------------------------------------
// Classifier: empirical probes of the four equivalent characterizations of
// operator log-convexity. A probe either stays consistent over its trials or
// records the first counterexample; equivalence is only ever reported as
// cross-probe agreement, never asserted as proof.
// ---------------------------------------------------------------------------

struct Witness {
  std::uint64_t seed;
  int dim;
  double min_eig;
};

struct ProbeReport {
  std::string criterion;  // "decreasing", "log-convex", "mean-every", "mean-some"
  int trials;             // executed before stopping
  std::optional<Witness> counterexample;
};

struct ClassifierVerdict {
  std::string function;
  FunctionClaims claims;
  std::vector<ProbeReport> probes;

  bool any_counterexample() const;
  // All probes agree on found / not found. The probed conditions are
  // equivalent, so disagreement is an implementation-bug signal for the
  // functions this library sweeps, where each probe fires readily when
  // any does.
  bool cross_probe_consistent() const;
};

struct ClassifyConfig {
  std::vector<int> dims = {2, 3, 4, 5};
  int trials = 200;  // per dim per probe
  std::uint64_t seed = 1;
  double rel_tol = 1e-8;
  double floor = kDefaultEigFloor;
};

ClassifierVerdict classify(const ScalarFunction& f, const ClassifyConfig& cfg);

// ---------------------------------------------------------------------------
// Randomized campaign over named checks.
// ---------------------------------------------------------------------------

struct CampaignConfig {
  std::vector<std::string> checks;  // empty = none; names from check_names()
  std::vector<int> dims = {2, 3, 4, 5};
  int trials = 200;  // per dim per check
  std::uint64_t seed = 1;
  double rel_tol = 1e-8;
  double floor = kDefaultEigFloor;
  std::string function = "power:-0.5";
};

struct FailureRecord {
  std::uint64_t seed;  // reproduction seed for run_check_trial
  std::vector<int> dims;
  double witness_min_eig;
};

struct CheckResult {
  std::string check_name;
  int trials;  // total across dims
  std::vector<FailureRecord> failures;
  double worst_slack;  // least witness eigenvalue seen across trials
  CampaignConfig config;
};

struct TrialOutcome {
  bool violated;
  double witness_min_eig;
};

// All registered check names, map-level checks first, field-level last.
const std::vector<std::string>& check_names();

// One trial of a named check with operands drawn from `seed`; campaigns call
// this and failure replay calls it again with the recorded seed.
TrialOutcome run_check_trial(const std::string& check, const ScalarFunction& f,
                             int dim, std::uint64_t seed, double rel_tol,
                             double floor);

// Deterministic for a given config: identical results whatever the thread
// count (bounded by LOEWNER_LAB_THREADS). Throws ConfigError on unknown
// check names.
std::vector<CheckResult> run_campaign(const CampaignConfig& cfg);

// ---------------------------------------------------------------------------
// Built-in worked example: f(t) = t^{-1/2}, compression to rows/cols {2,3}
// of a fixed real 3x3 matrix, with the reference values the chain
// f(Phi(A)) <= Phi(f(A)^{-1})^{-1} <= Phi(f(A)) evaluates to (4 decimals).
// ---------------------------------------------------------------------------

struct WorkedExample {
  HermitianMatrix a;
  PositiveLinearMap phi;
  ScalarFunction f;
  std::vector<HermitianMatrix> reference;  // the three 2x2 values
};

WorkedExample worked_example();

}  // namespace llab
