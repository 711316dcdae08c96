#pragma once

#include <vector>

#include "llab/maps.hpp"
#include "llab/means.hpp"
#include "llab/order.hpp"
#include "llab/scalar_function.hpp"

namespace llab {

// Theta(FA, FB) = sum_t mu_t * perspective(f, A_t, B_t). The fields must
// have equal length, dim, and identical weights point by point: one measure
// serves every field of a statement.
HermitianMatrix theta(const ScalarFunction& f, const OperatorField& fa,
                      const OperatorField& fb, double floor = kDefaultEigFloor);

// Pointwise midpoint {(mu_t, (A_t + C_t)/2)} with the shared weights.
OperatorField field_nabla(const OperatorField& f, const OperatorField& g);

// The checks below compute both sides of an inequality and return the full
// verdict so sweeps can log witnesses; rel_tol scales with the operand norms
// as in loewner_compare_scaled. They are meaningful tests of the stated
// relation only for f with the matching claim; running them with other f is
// exactly how falsification sweeps find counterexamples.

// Theta(FA nabla FC, FB) <= Theta(FA, FB) # Theta(FC, FB), the first-argument
// log-convexity of Theta (expected LessOrEqual for operator log-convex f).
LoewnerVerdict theta_first_arg_logconvex_gap(const ScalarFunction& f,
                                             const OperatorField& fa,
                                             const OperatorField& fc,
                                             const OperatorField& fb,
                                             double rel_tol = 1e-8,
                                             double floor = kDefaultEigFloor);

// Theta(FA nabla FC, FB nabla FD)
//   <= (Theta(FA,FB) nabla Theta(FA,FD)) # (Theta(FC,FB) nabla Theta(FC,FD))
LoewnerVerdict theta_mixed_check(const ScalarFunction& f,
                                 const OperatorField& fa,
                                 const OperatorField& fc,
                                 const OperatorField& fb,
                                 const OperatorField& fd,
                                 double rel_tol = 1e-8,
                                 double floor = kDefaultEigFloor);

// Theta((FA+FC)/2, (FB+FD)/2) <= (Theta(FA,FB) + Theta(FC,FD))/2, the
// midpoint joint convexity (expected LessOrEqual for operator convex f).
LoewnerVerdict theta_joint_convexity_check(const ScalarFunction& f,
                                           const OperatorField& fa,
                                           const OperatorField& fb,
                                           const OperatorField& fc,
                                           const OperatorField& fd,
                                           double rel_tol = 1e-8,
                                           double floor = kDefaultEigFloor);

// g(sum_t w_t Phi_t(A_t nabla C_t), sum_t w_t Phi_t(B_t))
//   <= (sum_t w_t Phi_t(g(A_t,B_t))) # (sum_t w_t Phi_t(g(C_t,B_t)))
// for a unital map field.
LoewnerVerdict perspective_cdj_check(const ScalarFunction& f, const MapField& mf,
                                     const OperatorField& fa,
                                     const OperatorField& fc,
                                     const OperatorField& fb,
                                     double rel_tol = 1e-8,
                                     double floor = kDefaultEigFloor);

// Scalar instance over a unit vector x:
// g(<(A+C)/2 x, x>, <Bx, x>) <= sqrt(<g(A,B)x,x> <g(C,B)x,x>)
struct QuadraticFormResult {
  bool holds;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
};

QuadraticFormResult quadratic_form_check(const ScalarFunction& f,
                                         const HermitianMatrix& a,
                                         const HermitianMatrix& c,
                                         const HermitianMatrix& b,
                                         const std::vector<cplx>& x,
                                         double rel_tol = 1e-8,
                                         double floor = kDefaultEigFloor);

// sum_t mu_t (A_t # B_t) <= (sum_t mu_t A_t) # (sum_t mu_t B_t)
LoewnerVerdict cauchy_schwarz_means_check(const OperatorField& fa,
                                          const OperatorField& fb,
                                          double rel_tol = 1e-8,
                                          double floor = kDefaultEigFloor);

}  // namespace llab
