#include "llab/order.hpp"

namespace llab {

std::string to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::LessOrEqual: return "le";
    case OrderRelation::GreaterOrEqual: return "ge";
    case OrderRelation::Equal: return "eq";
    case OrderRelation::Incomparable: return "incomparable";
  }
  throw Error("to_string(OrderRelation): unknown value");
}

double default_order_tolerance(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs) {
  return 1e-8 * (1.0 + std::max(spectral_norm(lhs), spectral_norm(rhs)));
}

LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs, double tol) {
  if (lhs.dim() != rhs.dim())
    throw DimensionError("loewner_compare: dims " + std::to_string(lhs.dim()) +
                         " vs " + std::to_string(rhs.dim()));
  if (tol < 0.0) throw Error("loewner_compare: negative tolerance");

  const HermitianMatrix diff = rhs - lhs;
  const SpectralDecomposition s = eig_hermitian(diff);
  const double lo = s.min_eigenvalue();
  const double hi = s.max_eigenvalue();

  LoewnerVerdict v;
  v.min_eig_rhs_minus_lhs = lo;
  v.min_eig_lhs_minus_rhs = -hi;
  v.gap_spectral_radius = s.spectral_radius();
  v.tolerance = tol;

  const bool le = lo >= -tol;
  const bool ge = -hi >= -tol;
  if (le && ge)
    v.relation = OrderRelation::Equal;
  else if (le)
    v.relation = OrderRelation::LessOrEqual;
  else if (ge)
    v.relation = OrderRelation::GreaterOrEqual;
  else
    v.relation = OrderRelation::Incomparable;
  return v;
}

LoewnerVerdict loewner_compare(const HermitianMatrix& lhs,
                               const HermitianMatrix& rhs) {
  return loewner_compare(lhs, rhs, default_order_tolerance(lhs, rhs));
}

LoewnerVerdict loewner_compare_scaled(const HermitianMatrix& lhs,
                                      const HermitianMatrix& rhs, double rel) {
  const double tol =
      rel * (1.0 + std::max(spectral_norm(lhs), spectral_norm(rhs)));
  return loewner_compare(lhs, rhs, tol);
}

}  // namespace llab
