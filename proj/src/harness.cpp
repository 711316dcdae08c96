#include "llab/harness.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace llab {

namespace {

void require_isometry(const Cmat& c, const char* op) {
  if (c.rows() == 0 || c.cols() == 0)
    throw DimensionError(std::string(op) + ": empty isometry factor");
  if (c.rows() < c.cols())
    throw IsometryError(std::string(op) + ": " + std::to_string(c.rows()) +
                        " x " + std::to_string(c.cols()) +
                        " cannot satisfy C*C = I");
  const double defect = max_abs(adjoint(c) * c - Cmat::identity(c.cols()));
  if (defect > 1e-10)
    throw IsometryError(std::string(op) + ": C*C - I has max entry " +
                        std::to_string(defect));
}

// (C* f(A)^{-1} C)^{-1}, the middle expression of the sandwich. Singularity
// of the compressed inverse is a genuine obstruction, reported as its own
// error type rather than a positivity failure.
HermitianMatrix compressed_inverse(const ScalarFunction& f,
                                   const HermitianMatrix& a, const Cmat& c,
                                   double floor) {
  const HermitianMatrix fa_inv = inv(apply_function(f, a, floor), floor);
  const HermitianMatrix m = congruence(c, fa_inv);
  if (!(min_eigenvalue(m) > floor))
    throw InvertibilityError(
        "compressed inverse: C* f(A)^{-1} C has min eigenvalue " +
        std::to_string(min_eigenvalue(m)) + " at or below floor " +
        std::to_string(floor));
  return inv(m, 0.0);
}

}  // namespace

LoewnerVerdict check_log_convex_def(const ScalarFunction& f,
                                    const HermitianMatrix& a,
                                    const HermitianMatrix& b, double rel_tol,
                                    double floor) {
  const HermitianMatrix lhs = apply_function(f, mean_arithmetic(a, b), floor);
  const HermitianMatrix rhs = mean_geometric(apply_function(f, a, floor),
                                             apply_function(f, b, floor),
                                             floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

const char* to_string(MeanSelector s) {
  switch (s) {
    case MeanSelector::Nabla: return "nabla";
    case MeanSelector::Sharp: return "sharp";
    case MeanSelector::Harmonic: return "harm";
  }
  return "?";
}

LoewnerVerdict check_mean_variant(const ScalarFunction& f, MeanSelector sigma,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b, double rel_tol,
                                  double floor) {
  const HermitianMatrix lhs = apply_function(f, mean_arithmetic(a, b), floor);
  const HermitianMatrix fa = apply_function(f, a, floor);
  const HermitianMatrix fb = apply_function(f, b, floor);
  HermitianMatrix rhs = fa;
  switch (sigma) {
    case MeanSelector::Nabla: rhs = mean_arithmetic(fa, fb); break;
    case MeanSelector::Sharp: rhs = mean_geometric(fa, fb, floor); break;
    case MeanSelector::Harmonic: rhs = mean_harmonic(fa, fb, floor); break;
  }
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

LoewnerVerdict check_mean_variant(const ScalarFunction& f,
                                  const ScalarFunction& h,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b, double rel_tol,
                                  double floor) {
  const HermitianMatrix lhs = apply_function(f, mean_arithmetic(a, b), floor);
  const HermitianMatrix rhs = kubo_ando_mean(
      h, apply_function(f, a, floor), apply_function(f, b, floor), floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

LoewnerVerdict check_operator_decreasing(const ScalarFunction& f,
                                         const HermitianMatrix& a,
                                         const HermitianMatrix& b,
                                         double rel_tol, double floor) {
  const HermitianMatrix lhs = apply_function(f, b, floor);
  const HermitianMatrix rhs = apply_function(f, a, floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

LoewnerVerdict check_isometry_jensen(const ScalarFunction& f,
                                     const HermitianMatrix& a, const Cmat& c,
                                     double rel_tol, double floor) {
  require_isometry(c, "check_isometry_jensen");
  if (c.rows() != a.dim())
    throw DimensionError("check_isometry_jensen: C is " +
                         std::to_string(c.rows()) + " x " +
                         std::to_string(c.cols()) + " but A has dim " +
                         std::to_string(a.dim()));
  const HermitianMatrix lhs = apply_function(f, congruence(c, a), floor);
  const HermitianMatrix rhs = compressed_inverse(f, a, c, floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

ChainVerdicts check_isometry_sandwich(const ScalarFunction& f,
                                      const HermitianMatrix& a, const Cmat& c,
                                      double rel_tol, double floor) {
  require_isometry(c, "check_isometry_sandwich");
  if (c.rows() != a.dim())
    throw DimensionError("check_isometry_sandwich: C is " +
                         std::to_string(c.rows()) + " x " +
                         std::to_string(c.cols()) + " but A has dim " +
                         std::to_string(a.dim()));
  const HermitianMatrix fa = apply_function(f, a, floor);
  const HermitianMatrix left = apply_function(f, congruence(c, a), floor);
  const HermitianMatrix mid = compressed_inverse(f, a, c, floor);
  const HermitianMatrix right = congruence(c, fa);
  ChainVerdicts chain;
  chain.links.push_back(loewner_compare_scaled(left, mid, rel_tol));
  chain.links.push_back(loewner_compare_scaled(mid, right, rel_tol));
  return chain;
}

LoewnerVerdict check_multi_isometry(const ScalarFunction& f,
                                    const std::vector<HermitianMatrix>& a_list,
                                    const std::vector<Cmat>& c_list,
                                    double rel_tol, double floor) {
  if (a_list.empty() || a_list.size() != c_list.size())
    throw ConfigError("check_multi_isometry: needs equal, nonempty operand "
                      "and factor lists");
  const int out = c_list.front().cols();
  Cmat gram = Cmat(out, out);
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    if (c_list[i].cols() != out)
      throw DimensionError("check_multi_isometry: factor column counts differ");
    if (c_list[i].rows() != a_list[i].dim())
      throw DimensionError("check_multi_isometry: factor " +
                           std::to_string(i) + " is " +
                           std::to_string(c_list[i].rows()) + " x " +
                           std::to_string(c_list[i].cols()) +
                           " but its operand has dim " +
                           std::to_string(a_list[i].dim()));
    gram = gram + adjoint(c_list[i]) * c_list[i];
  }
  const double defect = max_abs(gram - Cmat::identity(out));
  if (defect > 1e-10)
    throw IsometryError("check_multi_isometry: sum C_i* C_i - I has max "
                        "entry " + std::to_string(defect));

  HermitianMatrix arg = HermitianMatrix::zero(out);
  HermitianMatrix acc = HermitianMatrix::zero(out);
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    arg = arg + congruence(c_list[i], a_list[i]);
    acc = acc + congruence(c_list[i],
                           inv(apply_function(f, a_list[i], floor), floor));
  }
  if (!(min_eigenvalue(acc) > floor))
    throw InvertibilityError(
        "check_multi_isometry: sum C_i* f(A_i)^{-1} C_i has min eigenvalue " +
        std::to_string(min_eigenvalue(acc)) + " at or below floor " +
        std::to_string(floor));
  const HermitianMatrix lhs = apply_function(f, arg, floor);
  const HermitianMatrix rhs = inv(acc, 0.0);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

ChainVerdicts check_sharp_cdj(const ScalarFunction& f,
                              const PositiveLinearMap& phi,
                              const HermitianMatrix& a, double rel_tol,
                              double floor) {
  if (!phi.unital())
    throw ConfigError("check_sharp_cdj: map must be unital");
  if (phi.in_dim() != a.dim())
    throw DimensionError("check_sharp_cdj: map in_dim " +
                         std::to_string(phi.in_dim()) + " vs operand dim " +
                         std::to_string(a.dim()));
  const HermitianMatrix fa = apply_function(f, a, floor);
  const HermitianMatrix left = apply_function(f, phi(a), floor);
  const HermitianMatrix mid = inv(phi(inv(fa, floor)), floor);
  const HermitianMatrix right = phi(fa);
  ChainVerdicts chain;
  chain.links.push_back(loewner_compare_scaled(left, mid, rel_tol));
  chain.links.push_back(loewner_compare_scaled(mid, right, rel_tol));
  return chain;
}

ChainVerdicts check_power_corollary_1(const PositiveLinearMap& phi,
                                      const HermitianMatrix& a, double alpha,
                                      double rel_tol, double floor) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("check_power_corollary_1: alpha must lie in [0, 1], "
                      "got " + std::to_string(alpha));
  if (!phi.unital())
    throw ConfigError("check_power_corollary_1: map must be unital");
  const ScalarFunction pow_a = ScalarFunction::power(alpha);
  const ScalarFunction pow_neg_a = ScalarFunction::power(-alpha);
  const HermitianMatrix left = apply_function(pow_neg_a, phi(a), floor);
  const HermitianMatrix mid = inv(phi(apply_function(pow_a, a, floor)), floor);
  const HermitianMatrix right = phi(apply_function(pow_neg_a, a, floor));
  ChainVerdicts chain;
  chain.links.push_back(loewner_compare_scaled(left, mid, rel_tol));
  chain.links.push_back(loewner_compare_scaled(mid, right, rel_tol));
  return chain;
}

ChainVerdicts check_power_corollary_2(const PositiveLinearMap& phi,
                                      const HermitianMatrix& a, double alpha,
                                      double rel_tol, double floor) {
  if (!(alpha <= -1.0))
    throw ConfigError("check_power_corollary_2: alpha must be <= -1, got " +
                      std::to_string(alpha));
  if (!phi.unital())
    throw ConfigError("check_power_corollary_2: map must be unital");
  const HermitianMatrix pa =
      phi(apply_function(ScalarFunction::power(alpha), a, floor));
  const HermitianMatrix left =
      apply_function(ScalarFunction::power(1.0 / alpha), pa, floor);
  const HermitianMatrix mid = inv(phi(inv(a, floor)), floor);
  const HermitianMatrix right = phi(a);
  ChainVerdicts chain;
  chain.links.push_back(loewner_compare_scaled(left, mid, rel_tol));
  chain.links.push_back(loewner_compare_scaled(mid, right, rel_tol));
  return chain;
}

LoewnerVerdict check_sum_of_maps(const ScalarFunction& f,
                                 const std::vector<PositiveLinearMap>& maps,
                                 const std::vector<HermitianMatrix>& a_list,
                                 double rel_tol, double floor) {
  if (maps.empty() || maps.size() != a_list.size())
    throw ConfigError("check_sum_of_maps: needs equal, nonempty map and "
                      "operand lists");
  const int out = maps.front().out_dim();
  HermitianMatrix unit = HermitianMatrix::zero(out);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].out_dim() != out)
      throw DimensionError("check_sum_of_maps: map out_dims differ");
    if (maps[i].in_dim() != a_list[i].dim())
      throw DimensionError("check_sum_of_maps: map " + std::to_string(i) +
                           " in_dim " + std::to_string(maps[i].in_dim()) +
                           " vs operand dim " +
                           std::to_string(a_list[i].dim()));
    unit = unit + maps[i](HermitianMatrix::identity(maps[i].in_dim()));
  }
  const double defect = max_abs(unit - HermitianMatrix::identity(out));
  if (defect > 1e-10)
    throw ConfigError("check_sum_of_maps: sum Phi_i(I) - I has max entry " +
                      std::to_string(defect));

  HermitianMatrix arg = HermitianMatrix::zero(out);
  HermitianMatrix acc = HermitianMatrix::zero(out);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    arg = arg + maps[i](a_list[i]);
    acc = acc + maps[i](inv(apply_function(f, a_list[i], floor), floor));
  }
  if (!(min_eigenvalue(acc) > floor))
    throw InvertibilityError(
        "check_sum_of_maps: sum Phi_i(f(A_i)^{-1}) has min eigenvalue " +
        std::to_string(min_eigenvalue(acc)) + " at or below floor " +
        std::to_string(floor));
  const HermitianMatrix lhs = apply_function(f, arg, floor);
  const HermitianMatrix rhs = inv(acc, 0.0);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

ChainVerdicts check_subadditivity(const ScalarFunction& f,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b, double rel_tol,
                                  double floor) {
  const HermitianMatrix fa = apply_function(f, a, floor);
  const HermitianMatrix fb = apply_function(f, b, floor);
  const HermitianMatrix e1 = apply_function(f, a + b, floor);
  const HermitianMatrix e2 = mean_geometric(apply_function(f, 2.0 * a, floor),
                                            apply_function(f, 2.0 * b, floor),
                                            floor);
  const HermitianMatrix e3 = mean_geometric(fa, fb, floor);
  const HermitianMatrix e4 = mean_arithmetic(fa, fb);
  const HermitianMatrix e5 = fa + fb;
  ChainVerdicts chain;
  chain.links.push_back(loewner_compare_scaled(e1, e2, rel_tol));
  chain.links.push_back(loewner_compare_scaled(e2, e3, rel_tol));
  chain.links.push_back(loewner_compare_scaled(e3, e4, rel_tol));
  chain.links.push_back(loewner_compare_scaled(e4, e5, rel_tol));
  return chain;
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

namespace {

// h(t) = (t-1)/log(t), the logarithmic mean: symmetric (t h(1/t) = h(t)),
// operator monotone, and distinct from the three named means. The mean
// inequality quantifies over symmetric means, every one of which dominates
// the harmonic mean; a non-symmetric h such as t^0.3 would be a false
// falsifier (at t = 4 the scalar instance already fails for t^{-1/2}).
const ScalarFunction& kubo_probe_function() {
  static const ScalarFunction h = ScalarFunction::custom(
      "logmean", [](double t) {
        const double x = t - 1.0;
        if (std::abs(x) < 1e-6) return 1.0 + x / 2.0 - x * x / 12.0;
        return x / std::log(t);
      });
  return h;
}

TrialOutcome probe_decreasing(const ScalarFunction& f, int dim, Rng& rng,
                              double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = a + random_psd(dim, rng);
  const LoewnerVerdict v = check_operator_decreasing(f, a, b, rel_tol, floor);
  return {!v.holds_le(), v.min_eig_rhs_minus_lhs};
}

TrialOutcome probe_log_convex(const ScalarFunction& f, int dim, Rng& rng,
                              double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  const LoewnerVerdict v = check_log_convex_def(f, a, b, rel_tol, floor);
  return {!v.holds_le(), v.min_eig_rhs_minus_lhs};
}

// "For every mean": one failing mean falsifies the universally quantified
// statement, so the probe tries the three standard means plus an interior
// representing function and reports the worst witness.
TrialOutcome probe_mean_every(const ScalarFunction& f, int dim, Rng& rng,
                              double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  TrialOutcome out{false, std::numeric_limits<double>::infinity()};
  const MeanSelector sigmas[] = {MeanSelector::Nabla, MeanSelector::Sharp,
                                 MeanSelector::Harmonic};
  for (MeanSelector s : sigmas) {
    const LoewnerVerdict v = check_mean_variant(f, s, a, b, rel_tol, floor);
    out.violated = out.violated || !v.holds_le();
    out.witness_min_eig = std::min(out.witness_min_eig, v.min_eig_rhs_minus_lhs);
  }
  const LoewnerVerdict v =
      check_mean_variant(f, kubo_probe_function(), a, b, rel_tol, floor);
  out.violated = out.violated || !v.holds_le();
  out.witness_min_eig = std::min(out.witness_min_eig, v.min_eig_rhs_minus_lhs);
  return out;
}

// "For some mean other than nabla": the harmonic mean is the smallest
// Kubo-Ando mean, so under the equivalence the existential form holds
// exactly when the harmonic instance does; that instance is the probe.
TrialOutcome probe_mean_some(const ScalarFunction& f, int dim, Rng& rng,
                             double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  const LoewnerVerdict v =
      check_mean_variant(f, MeanSelector::Harmonic, a, b, rel_tol, floor);
  return {!v.holds_le(), v.min_eig_rhs_minus_lhs};
}

using ProbeFn = TrialOutcome (*)(const ScalarFunction&, int, Rng&, double,
                                 double);

struct ProbeRecipe {
  const char* criterion;
  ProbeFn run;
};

constexpr ProbeRecipe kProbes[] = {
    {"decreasing", probe_decreasing},
    {"log-convex", probe_log_convex},
    {"mean-every", probe_mean_every},
    {"mean-some", probe_mean_some},
};

}  // namespace

bool ClassifierVerdict::any_counterexample() const {
  for (const ProbeReport& p : probes)
    if (p.counterexample.has_value()) return true;
  return false;
}

bool ClassifierVerdict::cross_probe_consistent() const {
  if (probes.empty()) return true;
  const bool first = probes.front().counterexample.has_value();
  for (const ProbeReport& p : probes)
    if (p.counterexample.has_value() != first) return false;
  return true;
}

ClassifierVerdict classify(const ScalarFunction& f, const ClassifyConfig& cfg) {
  if (cfg.trials < 0)
    throw ConfigError("classify: trials must be nonnegative");
  if (!(cfg.rel_tol > 0.0))
    throw ConfigError("classify: tolerance must be positive");
  for (int d : cfg.dims)
    if (d < 1)
      throw ConfigError("classify: dims must be positive, got " +
                        std::to_string(d));

  ClassifierVerdict verdict;
  verdict.function = f.name();
  verdict.claims = f.claims();
  for (const ProbeRecipe& probe : kProbes) {
    ProbeReport report;
    report.criterion = probe.criterion;
    report.trials = 0;
    const std::string tag = std::string("classify-") + probe.criterion;
    for (int dim : cfg.dims) {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = derive_seed(cfg.seed, tag, dim, trial);
        Rng rng(seed);
        const TrialOutcome out =
            probe.run(f, dim, rng, cfg.rel_tol, cfg.floor);
        ++report.trials;
        if (out.violated) {
          report.counterexample = Witness{seed, dim, out.witness_min_eig};
          break;
        }
      }
      if (report.counterexample.has_value()) break;
    }
    verdict.probes.push_back(std::move(report));
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Campaign registry
// ---------------------------------------------------------------------------

namespace {

TrialOutcome from_verdict(const LoewnerVerdict& v) {
  return {!v.holds_le(), v.min_eig_rhs_minus_lhs};
}

TrialOutcome from_chain(const ChainVerdicts& chain) {
  return {!chain.all_le(), chain.min_witness()};
}

int half_dim(int dim) { return (dim + 1) / 2; }

int smallest_prime_factor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Largest proper-divisor target for direct-sum averaging; dim 1 and primes
// collapse to a single-column trace-like compression, which is still a
// legitimate unital map.
int dsavg_out_dim(int dim) {
  return dim == 1 ? 1 : dim / smallest_prime_factor(dim);
}

TrialOutcome trial_log_convex_def(const ScalarFunction& f, int dim, Rng& rng,
                                  double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  return from_verdict(check_log_convex_def(f, a, b, rel_tol, floor));
}

template <MeanSelector kSigma>
TrialOutcome trial_mean_variant(const ScalarFunction& f, int dim, Rng& rng,
                                double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  return from_verdict(check_mean_variant(f, kSigma, a, b, rel_tol, floor));
}

TrialOutcome trial_operator_decreasing(const ScalarFunction& f, int dim,
                                       Rng& rng, double rel_tol,
                                       double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = a + random_psd(dim, rng);
  return from_verdict(check_operator_decreasing(f, a, b, rel_tol, floor));
}

TrialOutcome trial_isometry_jensen(const ScalarFunction& f, int dim, Rng& rng,
                                   double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const Cmat c = random_isometry(dim, half_dim(dim), rng);
  return from_verdict(check_isometry_jensen(f, a, c, rel_tol, floor));
}

TrialOutcome trial_isometry_sandwich(const ScalarFunction& f, int dim,
                                     Rng& rng, double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const Cmat c = random_isometry(dim, half_dim(dim), rng);
  return from_chain(check_isometry_sandwich(f, a, c, rel_tol, floor));
}

TrialOutcome trial_multi_isometry(const ScalarFunction& f, int dim, Rng& rng,
                                  double rel_tol, double floor) {
  const std::vector<Cmat> cs = random_unital_kraus(dim, dim, 3, rng);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) as.push_back(random_spd(dim, rng));
  return from_verdict(check_multi_isometry(f, as, cs, rel_tol, floor));
}

template <PositiveLinearMap::Kind kKind>
TrialOutcome trial_sharp_cdj(const ScalarFunction& f, int dim, Rng& rng,
                             double rel_tol, double floor) {
  int out = half_dim(dim);
  if constexpr (kKind == PositiveLinearMap::Kind::Pinching)
    out = dim;
  else if constexpr (kKind == PositiveLinearMap::Kind::DirectSumAverage)
    out = dsavg_out_dim(dim);
  const PositiveLinearMap phi = random_map(kKind, dim, out, rng);
  const HermitianMatrix a = random_spd(dim, rng);
  return from_chain(check_sharp_cdj(f, phi, a, rel_tol, floor));
}

TrialOutcome trial_power_corollary_1(const ScalarFunction&, int dim, Rng& rng,
                                     double rel_tol, double floor) {
  const PositiveLinearMap phi =
      random_map(PositiveLinearMap::Kind::Kraus, dim, half_dim(dim), rng);
  const HermitianMatrix a = random_spd(dim, rng);
  const double alpha = rng.uniform(0.0, 1.0);
  return from_chain(check_power_corollary_1(phi, a, alpha, rel_tol, floor));
}

TrialOutcome trial_power_corollary_2(const ScalarFunction&, int dim, Rng& rng,
                                     double rel_tol, double floor) {
  const PositiveLinearMap phi =
      random_map(PositiveLinearMap::Kind::Kraus, dim, half_dim(dim), rng);
  const HermitianMatrix a = random_spd(dim, rng);
  const double alpha = -1.0 - rng.uniform(0.0, 2.0);
  return from_chain(check_power_corollary_2(phi, a, alpha, rel_tol, floor));
}

TrialOutcome trial_sum_of_maps(const ScalarFunction& f, int dim, Rng& rng,
                               double rel_tol, double floor) {
  const int out = half_dim(dim);
  const std::vector<double> w = random_weights(3, rng);
  double total = 0.0;
  for (double v : w) total += v;
  std::vector<PositiveLinearMap> maps;
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) {
    maps.push_back(random_map(PositiveLinearMap::Kind::Kraus, dim, out, rng)
                       .scaled(w[i] / total));
    as.push_back(random_spd(dim, rng));
  }
  return from_verdict(check_sum_of_maps(f, maps, as, rel_tol, floor));
}

TrialOutcome trial_subadditivity(const ScalarFunction& f, int dim, Rng& rng,
                                 double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  return from_chain(check_subadditivity(f, a, b, rel_tol, floor));
}

int random_field_length(Rng& rng) { return rng.uniform_int(1, 4); }

TrialOutcome trial_cauchy_schwarz(const ScalarFunction&, int dim, Rng& rng,
                                  double rel_tol, double floor) {
  const std::vector<double> w = random_weights(random_field_length(rng), rng);
  const OperatorField fa = random_field(w, dim, rng);
  const OperatorField fb = random_field(w, dim, rng);
  return from_verdict(cauchy_schwarz_means_check(fa, fb, rel_tol, floor));
}

TrialOutcome trial_theta_first_arg(const ScalarFunction& f, int dim, Rng& rng,
                                   double rel_tol, double floor) {
  const std::vector<double> w = random_weights(random_field_length(rng), rng);
  const OperatorField fa = random_field(w, dim, rng);
  const OperatorField fc = random_field(w, dim, rng);
  const OperatorField fb = random_field(w, dim, rng);
  return from_verdict(
      theta_first_arg_logconvex_gap(f, fa, fc, fb, rel_tol, floor));
}

TrialOutcome trial_theta_mixed(const ScalarFunction& f, int dim, Rng& rng,
                               double rel_tol, double floor) {
  const std::vector<double> w = random_weights(random_field_length(rng), rng);
  const OperatorField fa = random_field(w, dim, rng);
  const OperatorField fc = random_field(w, dim, rng);
  const OperatorField fb = random_field(w, dim, rng);
  const OperatorField fd = random_field(w, dim, rng);
  return from_verdict(theta_mixed_check(f, fa, fc, fb, fd, rel_tol, floor));
}

TrialOutcome trial_theta_joint_convexity(const ScalarFunction& f, int dim,
                                         Rng& rng, double rel_tol,
                                         double floor) {
  const std::vector<double> w = random_weights(random_field_length(rng), rng);
  const OperatorField fa = random_field(w, dim, rng);
  const OperatorField fb = random_field(w, dim, rng);
  const OperatorField fc = random_field(w, dim, rng);
  const OperatorField fd = random_field(w, dim, rng);
  return from_verdict(
      theta_joint_convexity_check(f, fa, fb, fc, fd, rel_tol, floor));
}

TrialOutcome trial_perspective_cdj(const ScalarFunction& f, int dim, Rng& rng,
                                   double rel_tol, double floor) {
  const int length = random_field_length(rng);
  const int out = rng.uniform_int(0, 1) == 0 ? dim : half_dim(dim);
  const MapField mf = random_unital_map_field(length, dim, out, rng);
  std::vector<double> w;
  for (int t = 0; t < mf.length(); ++t) w.push_back(mf[t].weight);
  const OperatorField fa = random_field(w, dim, rng);
  const OperatorField fc = random_field(w, dim, rng);
  const OperatorField fb = random_field(w, dim, rng);
  return from_verdict(perspective_cdj_check(f, mf, fa, fc, fb, rel_tol, floor));
}

TrialOutcome trial_quadratic_form(const ScalarFunction& f, int dim, Rng& rng,
                                  double rel_tol, double floor) {
  const HermitianMatrix a = random_spd(dim, rng);
  const HermitianMatrix c = random_spd(dim, rng);
  const HermitianMatrix b = random_spd(dim, rng);
  std::vector<cplx> x(dim);
  double norm_sq = 0.0;
  while (norm_sq < 1e-12) {
    norm_sq = 0.0;
    for (cplx& v : x) {
      v = cplx(rng.normal(), rng.normal());
      norm_sq += std::norm(v);
    }
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (cplx& v : x) v *= scale;
  const QuadraticFormResult q =
      quadratic_form_check(f, a, c, b, x, rel_tol, floor);
  return {!q.holds, q.slack};
}

using TrialFn = TrialOutcome (*)(const ScalarFunction&, int, Rng&, double,
                                 double);

struct CheckRecipe {
  const char* name;
  TrialFn run;
};

constexpr CheckRecipe kChecks[] = {
    {"log-convex-def", trial_log_convex_def},
    {"mean-nabla", trial_mean_variant<MeanSelector::Nabla>},
    {"mean-sharp", trial_mean_variant<MeanSelector::Sharp>},
    {"mean-harm", trial_mean_variant<MeanSelector::Harmonic>},
    {"operator-decreasing", trial_operator_decreasing},
    {"isometry-jensen", trial_isometry_jensen},
    {"isometry-sandwich", trial_isometry_sandwich},
    {"multi-isometry", trial_multi_isometry},
    {"sharp-cdj-compression",
     trial_sharp_cdj<PositiveLinearMap::Kind::Compression>},
    {"sharp-cdj-kraus", trial_sharp_cdj<PositiveLinearMap::Kind::Kraus>},
    {"sharp-cdj-dsavg",
     trial_sharp_cdj<PositiveLinearMap::Kind::DirectSumAverage>},
    {"sharp-cdj-pinching", trial_sharp_cdj<PositiveLinearMap::Kind::Pinching>},
    {"power-corollary-1", trial_power_corollary_1},
    {"power-corollary-2", trial_power_corollary_2},
    {"sum-of-maps", trial_sum_of_maps},
    {"subadditivity", trial_subadditivity},
    {"cauchy-schwarz-fields", trial_cauchy_schwarz},
    {"theta-first-arg", trial_theta_first_arg},
    {"theta-mixed", trial_theta_mixed},
    {"theta-joint-convexity", trial_theta_joint_convexity},
    {"perspective-cdj", trial_perspective_cdj},
    {"quadratic-form", trial_quadratic_form},
};

const CheckRecipe& find_recipe(const std::string& name) {
  for (const CheckRecipe& r : kChecks)
    if (name == r.name) return r;
  throw ConfigError("unknown check \"" + name + "\"; see check_names()");
}

int thread_budget(std::size_t task_count) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t cap = hw;
  if (const char* env = std::getenv("LOEWNER_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("LOEWNER_LAB_THREADS must be a positive integer, "
                        "got \"" + std::string(env) + "\"");
    cap = static_cast<std::size_t>(v);
  }
  if (task_count < 1) task_count = 1;
  return static_cast<int>(std::min(task_count, cap));
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const CheckRecipe& r : kChecks) v.push_back(r.name);
    return v;
  }();
  return names;
}

TrialOutcome run_check_trial(const std::string& check, const ScalarFunction& f,
                             int dim, std::uint64_t seed, double rel_tol,
                             double floor) {
  if (dim < 1)
    throw ConfigError("run_check_trial: dim must be positive, got " +
                      std::to_string(dim));
  const CheckRecipe& recipe = find_recipe(check);
  Rng rng(seed);
  return recipe.run(f, dim, rng, rel_tol, floor);
}

std::vector<CheckResult> run_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 0)
    throw ConfigError("run_campaign: trials must be nonnegative");
  if (!(cfg.rel_tol > 0.0))
    throw ConfigError("run_campaign: tolerance must be positive");
  for (int d : cfg.dims)
    if (d < 1)
      throw ConfigError("run_campaign: dims must be positive, got " +
                        std::to_string(d));
  const ScalarFunction f = parse_function(cfg.function);
  std::vector<const CheckRecipe*> recipes;
  for (const std::string& name : cfg.checks)
    recipes.push_back(&find_recipe(name));

  struct Task {
    std::size_t check;
    int dim;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < recipes.size(); ++c)
    for (int dim : cfg.dims) tasks.push_back({c, dim});

  struct TaskTally {
    std::vector<FailureRecord> failures;
    double worst = std::numeric_limits<double>::infinity();
    int trials = 0;
  };
  std::vector<TaskTally> tallies(tasks.size());

  // Tasks are claimed off a shared cursor, but every tally lands in its own
  // preallocated slot, so the merged output does not depend on the number
  // of workers or on scheduling.
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::exception_ptr first_error;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size() || failed.load()) return;
      const Task& task = tasks[i];
      TaskTally& tally = tallies[i];
      try {
        for (int trial = 0; trial < cfg.trials; ++trial) {
          const std::uint64_t seed =
              derive_seed(cfg.seed, recipes[task.check]->name, task.dim, trial);
          Rng rng(seed);
          const TrialOutcome out =
              recipes[task.check]->run(f, task.dim, rng, cfg.rel_tol,
                                       cfg.floor);
          ++tally.trials;
          tally.worst = std::min(tally.worst, out.witness_min_eig);
          if (out.violated)
            tally.failures.push_back({seed, {task.dim}, out.witness_min_eig});
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const int n_threads = thread_budget(tasks.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<CheckResult> results;
  for (std::size_t c = 0; c < recipes.size(); ++c) {
    CheckResult res;
    res.check_name = recipes[c]->name;
    res.trials = 0;
    res.worst_slack = std::numeric_limits<double>::infinity();
    res.config = cfg;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].check != c) continue;
      res.trials += tallies[i].trials;
      res.worst_slack = std::min(res.worst_slack, tallies[i].worst);
      for (const FailureRecord& rec : tallies[i].failures)
        res.failures.push_back(rec);
    }
    if (res.trials == 0) res.worst_slack = 0.0;
    results.push_back(std::move(res));
  }
  return results;
}

WorkedExample worked_example() {
  return WorkedExample{
      HermitianMatrix::real(3, {2, 0, 1,
                                0, 1, 1,
                                1, 1, 3}),
      PositiveLinearMap::compression(3, {2, 3}),
      ScalarFunction::power(-0.5),
      {HermitianMatrix::real(2, {1.1945, -0.2706, -0.2706, 0.6533}),
       HermitianMatrix::real(2, {1.2192, -0.2933, -0.2933, 0.6760}),
       HermitianMatrix::real(2, {1.2420, -0.3261, -0.3261, 0.7234})}};
}

}  // namespace llab
