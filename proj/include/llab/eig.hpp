#pragma once

#include <functional>
#include <vector>

#include "llab/matrix.hpp"

namespace llab {

// Eigenvalue floor under which an operand stops counting as strictly
// positive. The library works on invertible positives only; this is the
// numerical stand-in for invertibility.
inline constexpr double kDefaultEigFloor = 1e-10;

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Cmat eigenvectors;                // unitary, columns match eigenvalues

  int dim() const { return eigenvectors.rows(); }
  double min_eigenvalue() const { return eigenvalues.front(); }
  double max_eigenvalue() const { return eigenvalues.back(); }
  double spectral_radius() const;

  // V diag(f(lambda)) V*, symmetrized.
  HermitianMatrix rebuild(const std::function<double(double)>& f) const;
};

// Cyclic complex Jacobi rotations. Deterministic: fixed sweep order, fixed
// eigenvalue sort (ascending, stable). Convergence when the off-diagonal
// Frobenius mass drops below 1e-13 * ||A||_F; the sweep cap is 100 * dim^2.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);
double spectral_norm(const HermitianMatrix& a);

bool strictly_positive(const HermitianMatrix& a, double floor = 0.0);

// Spectral square root; eigenvalues in [-clamp_tol, 0) are clamped to zero,
// anything below -clamp_tol is an error.
HermitianMatrix sqrt_psd(const HermitianMatrix& a, double clamp_tol = 1e-9);

// Spectral inverse; requires min eigenvalue above `floor`.
HermitianMatrix inv(const HermitianMatrix& a, double floor = kDefaultEigFloor);

}  // namespace llab
