#pragma once

#include <string>

#include "llab/eig.hpp"
#include "llab/matrix.hpp"

namespace llab {

enum class OrderRelation { LessOrEqual, GreaterOrEqual, Equal, Incomparable };

std::string to_string(OrderRelation r);

// Outcome of comparing two Hermitian matrices in the positive-semidefinite
// order.  Both witness eigenvalues are kept so a caller can report how far
// either direction is from holding, and gap_spectral_radius measures the
// total size of rhs - lhs for strict-versus-borderline classification.
struct LoewnerVerdict {
  OrderRelation relation;
  double min_eig_rhs_minus_lhs;  // min eig of (rhs - lhs); >= -tol means lhs <= rhs
  double min_eig_lhs_minus_rhs;  // min eig of (lhs - rhs); >= -tol means lhs >= rhs
  double gap_spectral_radius;    // spectral radius of (rhs - lhs)
  double tolerance;

  bool holds_le() const { return relation == OrderRelation::LessOrEqual ||
                                 relation == OrderRelation::Equal; }
  bool holds_ge() const { return relation == OrderRelation::GreaterOrEqual ||
                                 relation == OrderRelation::Equal; }
};

// Compares lhs and rhs with an explicit absolute tolerance on witness
// eigenvalues.  Equal means both one-sided tests pass, which bounds the
// difference's spectral radius by tol automatically.
LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs, double tol);

// Same, with tol = 1e-8 * (1 + max(||lhs||, ||rhs||)) so the test scales
// with the operands.
LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs);

double default_order_tolerance(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs);

// tol = rel * (1 + max(||lhs||, ||rhs||)); the default overload uses
// rel = 1e-8. Campaign configs override rel, not the absolute tol.
LoewnerVerdict loewner_compare_scaled(const HermitianMatrix& lhs,
                                      const HermitianMatrix& rhs, double rel);

}  // namespace llab
