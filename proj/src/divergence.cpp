#include "llab/divergence.hpp"

#include <cmath>

namespace llab {

namespace {

void check_matched(const OperatorField& a, const OperatorField& b,
                   const char* op) {
  if (a.length() != b.length())
    throw DimensionError(std::string(op) + ": field lengths " +
                         std::to_string(a.length()) + " vs " +
                         std::to_string(b.length()));
  if (a.dim() != b.dim())
    throw DimensionError(std::string(op) + ": field dims " +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  if (!same_weights(a, b))
    throw ConfigError(std::string(op) +
                      ": fields must share one weight vector");
}

void check_positive_field(const OperatorField& f, double floor,
                          const char* op) {
  if (!f.strictly_positive(floor))
    throw NotPositiveError(std::string(op) + ": field member min eigenvalue " +
                           std::to_string(f.member_min_eigenvalue()) +
                           " at or below floor " + std::to_string(floor));
}

// Pointwise sum_t w_t Phi_t(X_t)
HermitianMatrix integrate_mapped(const MapField& mf,
                                 const OperatorField& field) {
  HermitianMatrix acc = HermitianMatrix::zero(mf.out_dim());
  for (int t = 0; t < mf.length(); ++t)
    acc = acc + mf[t].weight * mf[t].map(field[t].matrix);
  return acc;
}

}  // namespace

HermitianMatrix theta(const ScalarFunction& f, const OperatorField& fa,
                      const OperatorField& fb, double floor) {
  check_matched(fa, fb, "theta");
  check_positive_field(fa, floor, "theta");
  check_positive_field(fb, floor, "theta");
  HermitianMatrix acc = HermitianMatrix::zero(fa.dim());
  for (int t = 0; t < fa.length(); ++t)
    acc = acc +
          fa[t].weight * perspective(f, fa[t].matrix, fb[t].matrix, floor);
  return acc;
}

OperatorField field_nabla(const OperatorField& f, const OperatorField& g) {
  check_matched(f, g, "field_nabla");
  std::vector<FieldPoint> pts;
  pts.reserve(f.length());
  for (int t = 0; t < f.length(); ++t)
    pts.push_back({f[t].weight, mean_arithmetic(f[t].matrix, g[t].matrix)});
  return OperatorField(std::move(pts));
}

LoewnerVerdict theta_first_arg_logconvex_gap(const ScalarFunction& f,
                                             const OperatorField& fa,
                                             const OperatorField& fc,
                                             const OperatorField& fb,
                                             double rel_tol, double floor) {
  const HermitianMatrix lhs = theta(f, field_nabla(fa, fc), fb, floor);
  const HermitianMatrix rhs =
      mean_geometric(theta(f, fa, fb, floor), theta(f, fc, fb, floor), floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

LoewnerVerdict theta_mixed_check(const ScalarFunction& f,
                                 const OperatorField& fa,
                                 const OperatorField& fc,
                                 const OperatorField& fb,
                                 const OperatorField& fd, double rel_tol,
                                 double floor) {
  const HermitianMatrix lhs =
      theta(f, field_nabla(fa, fc), field_nabla(fb, fd), floor);
  const HermitianMatrix left = mean_arithmetic(theta(f, fa, fb, floor),
                                               theta(f, fa, fd, floor));
  const HermitianMatrix right = mean_arithmetic(theta(f, fc, fb, floor),
                                                theta(f, fc, fd, floor));
  return loewner_compare_scaled(lhs, mean_geometric(left, right, floor),
                                rel_tol);
}

LoewnerVerdict theta_joint_convexity_check(const ScalarFunction& f,
                                           const OperatorField& fa,
                                           const OperatorField& fb,
                                           const OperatorField& fc,
                                           const OperatorField& fd,
                                           double rel_tol, double floor) {
  const HermitianMatrix lhs =
      theta(f, field_nabla(fa, fc), field_nabla(fb, fd), floor);
  const HermitianMatrix rhs =
      mean_arithmetic(theta(f, fa, fb, floor), theta(f, fc, fd, floor));
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

LoewnerVerdict perspective_cdj_check(const ScalarFunction& f, const MapField& mf,
                                     const OperatorField& fa,
                                     const OperatorField& fc,
                                     const OperatorField& fb, double rel_tol,
                                     double floor) {
  if (!mf.unital())
    throw ConfigError("perspective_cdj_check: map field is not unital");
  check_matched(fa, fc, "perspective_cdj_check");
  check_matched(fa, fb, "perspective_cdj_check");
  if (mf.length() != fa.length())
    throw DimensionError("perspective_cdj_check: map field length " +
                         std::to_string(mf.length()) + " vs " +
                         std::to_string(fa.length()));
  if (mf.in_dim() != fa.dim())
    throw DimensionError("perspective_cdj_check: map in_dim " +
                         std::to_string(mf.in_dim()) + " vs field dim " +
                         std::to_string(fa.dim()));
  check_positive_field(fa, floor, "perspective_cdj_check");
  check_positive_field(fc, floor, "perspective_cdj_check");
  check_positive_field(fb, floor, "perspective_cdj_check");

  const HermitianMatrix lhs =
      perspective(f, integrate_mapped(mf, field_nabla(fa, fc)),
                  integrate_mapped(mf, fb), floor);

  std::vector<FieldPoint> ga, gc;
  for (int t = 0; t < fa.length(); ++t) {
    ga.push_back(
        {fa[t].weight, perspective(f, fa[t].matrix, fb[t].matrix, floor)});
    gc.push_back(
        {fa[t].weight, perspective(f, fc[t].matrix, fb[t].matrix, floor)});
  }
  const HermitianMatrix rhs =
      mean_geometric(integrate_mapped(mf, OperatorField(std::move(ga))),
                     integrate_mapped(mf, OperatorField(std::move(gc))), floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

QuadraticFormResult quadratic_form_check(const ScalarFunction& f,
                                         const HermitianMatrix& a,
                                         const HermitianMatrix& c,
                                         const HermitianMatrix& b,
                                         const std::vector<cplx>& x,
                                         double rel_tol, double floor) {
  const int n = a.dim();
  if (c.dim() != n || b.dim() != n)
    throw DimensionError("quadratic_form_check: operand dims differ");
  if (static_cast<int>(x.size()) != n)
    throw DimensionError("quadratic_form_check: vector length " +
                         std::to_string(x.size()) + " vs dim " +
                         std::to_string(n));
  double norm_sq = 0.0;
  for (const cplx& v : x) norm_sq += std::norm(v);
  if (std::abs(norm_sq - 1.0) > 1e-12)
    throw Error("quadratic_form_check: x is not a unit vector (|x|^2 = " +
                std::to_string(norm_sq) + ")");

  const auto form = [&x, n](const HermitianMatrix& m) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += std::conj(x[i]) * m(i, j) * x[j];
    return acc.real();
  };

  const double mid = form(mean_arithmetic(a, c));
  const double bform = form(b);
  if (!(mid > floor) || !(bform > floor))
    throw NotPositiveError(
        "quadratic_form_check: quadratic forms must be strictly positive");

  // scalar perspective g(s, t) = t * f(s/t)
  const double lhs = bform * f(mid / bform);
  const double rhs = std::sqrt(form(perspective(f, a, b, floor)) *
                               form(perspective(f, c, b, floor)));
  const double tol = rel_tol * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
  return {lhs <= rhs + tol, lhs, rhs, rhs - lhs};
}

LoewnerVerdict cauchy_schwarz_means_check(const OperatorField& fa,
                                          const OperatorField& fb,
                                          double rel_tol, double floor) {
  check_matched(fa, fb, "cauchy_schwarz_means_check");
  check_positive_field(fa, floor, "cauchy_schwarz_means_check");
  check_positive_field(fb, floor, "cauchy_schwarz_means_check");
  HermitianMatrix lhs = HermitianMatrix::zero(fa.dim());
  for (int t = 0; t < fa.length(); ++t)
    lhs = lhs + fa[t].weight *
                    mean_geometric(fa[t].matrix, fb[t].matrix, floor);
  const HermitianMatrix rhs =
      mean_geometric(integrate_field(fa), integrate_field(fb), floor);
  return loewner_compare_scaled(lhs, rhs, rel_tol);
}

}  // namespace llab
