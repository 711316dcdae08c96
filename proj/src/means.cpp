#include "llab/means.hpp"

#include "llab/eig.hpp"

namespace llab {

namespace {

void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b,
                    const char* op) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(op) + ": dims " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
}

// B^{1/2} f(B^{-1/2} A B^{-1/2}) B^{1/2}, the congruence calculus shared by
// kubo_ando_mean and perspective.
HermitianMatrix congruence_calculus(const ScalarFunction& f,
                                    const HermitianMatrix& a,
                                    const HermitianMatrix& b, double floor,
                                    const char* op) {
  check_same_dim(a, b, op);
  const SpectralDecomposition sb = eig_hermitian(b);
  if (sb.min_eigenvalue() <= floor)
    throw NotPositiveError(std::string(op) + ": second argument min eigenvalue " +
                           std::to_string(sb.min_eigenvalue()) +
                           " at or below floor " + std::to_string(floor));
  const HermitianMatrix b_root = sb.rebuild([](double t) { return std::sqrt(t); });
  const HermitianMatrix b_inv_root =
      sb.rebuild([](double t) { return 1.0 / std::sqrt(t); });
  const HermitianMatrix inner = congruence(b_inv_root.mat(), a);
  const HermitianMatrix f_inner = apply_function(f, inner, floor);
  return congruence(b_root.mat(), f_inner);
}

}  // namespace

HermitianMatrix mean_arithmetic(const HermitianMatrix& a,
                                const HermitianMatrix& b) {
  check_same_dim(a, b, "mean_arithmetic");
  return 0.5 * (a + b);
}

HermitianMatrix mean_geometric(const HermitianMatrix& a,
                               const HermitianMatrix& b, double floor) {
  return congruence_calculus(ScalarFunction::power(0.5), a, b, floor,
                             "mean_geometric");
}

HermitianMatrix mean_harmonic(const HermitianMatrix& a,
                              const HermitianMatrix& b, double floor) {
  check_same_dim(a, b, "mean_harmonic");
  return inv(0.5 * (inv(a, floor) + inv(b, floor)), 0.0);
}

HermitianMatrix kubo_ando_mean(const ScalarFunction& h, const HermitianMatrix& a,
                               const HermitianMatrix& b, double floor) {
  if (!h.positive_on_grid())
    throw NotPositiveError("kubo_ando_mean: representing function " + h.name() +
                           " failed the positivity grid check");
  return congruence_calculus(h, a, b, floor, "kubo_ando_mean");
}

HermitianMatrix perspective(const ScalarFunction& f, const HermitianMatrix& a,
                            const HermitianMatrix& b, double floor) {
  if (!f.positive_on_grid())
    throw NotPositiveError("perspective: function " + f.name() +
                           " failed the positivity grid check");
  return congruence_calculus(f, a, b, floor, "perspective");
}

}  // namespace llab
