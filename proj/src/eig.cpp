#include "llab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace llab {

namespace {

// Off-diagonal Frobenius mass sqrt(2 * sum_{i<j} |a_ij|^2).
double off_diagonal_norm(const Cmat& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

double SpectralDecomposition::spectral_radius() const {
  return std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
}

HermitianMatrix SpectralDecomposition::rebuild(
    const std::function<double(double)>& f) const {
  const int n = dim();
  Cmat scaled(n, n);  // columns V_k * f(lambda_k)
  for (int k = 0; k < n; ++k) {
    const double fv = f(eigenvalues[k]);
    for (int i = 0; i < n; ++i) scaled(i, k) = eigenvectors(i, k) * fv;
  }
  return HermitianMatrix(scaled * adjoint(eigenvectors));
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& input) {
  const int n = input.dim();
  Cmat a = input.mat();
  Cmat v = Cmat::identity(n);

  const double fro = fro_norm(a);
  const double threshold = 1e-13 * fro;
  const long max_sweeps = 100L * n * n;

  if (n > 1) {
    long sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
      if (sweep++ >= max_sweeps)
        throw ConvergenceError(
            "eig_hermitian: no convergence after " +
                std::to_string(max_sweeps) + " sweeps, off-diagonal residual " +
                std::to_string(off_diagonal_norm(a)),
            off_diagonal_norm(a));
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const cplx apq = a(p, q);
          const double mag = std::abs(apq);
          if (mag == 0.0) continue;
          // Phase out the pivot, then the usual symmetric 2x2 rotation:
          // with phase = apq/|apq|, the unitary touches rows/cols p,q as
          //   [ c             s           ]
          //   [ -s*conj(ph)   c*conj(ph)  ]
          const cplx phase = apq / mag;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double tau = (aqq - app) / (2.0 * mag);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) /
              (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const cplx rqp = -s * std::conj(phase);
          const cplx rqq = c * std::conj(phase);

          for (int i = 0; i < n; ++i) {
            const cplx aip = a(i, p);
            const cplx aiq = a(i, q);
            a(i, p) = aip * c + aiq * rqp;
            a(i, q) = aip * s + aiq * rqq;
          }
          for (int j = 0; j < n; ++j) {
            const cplx apj = a(p, j);
            const cplx aqj = a(q, j);
            a(p, j) = c * apj + std::conj(rqp) * aqj;
            a(q, j) = s * apj + std::conj(rqq) * aqj;
          }
          a(p, p) = cplx(app - t * mag, 0.0);
          a(q, q) = cplx(aqq + t * mag, 0.0);
          a(p, q) = 0.0;
          a(q, p) = 0.0;

          for (int i = 0; i < n; ++i) {
            const cplx vip = v(i, p);
            const cplx viq = v(i, q);
            v(i, p) = vip * c + viq * rqp;
            v(i, q) = vip * s + viq * rqq;
          }
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a(x, x).real() < a(y, y).real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Cmat(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& a) {
  return eig_hermitian(a).min_eigenvalue();
}

double spectral_norm(const HermitianMatrix& a) {
  return eig_hermitian(a).spectral_radius();
}

bool strictly_positive(const HermitianMatrix& a, double floor) {
  if (floor < 0.0) throw Error("strictly_positive: floor must be >= 0");
  return min_eigenvalue(a) > floor;
}

HermitianMatrix sqrt_psd(const HermitianMatrix& a, double clamp_tol) {
  const SpectralDecomposition s = eig_hermitian(a);
  if (s.min_eigenvalue() < -clamp_tol)
    throw NotPositiveError("sqrt_psd: eigenvalue " +
                           std::to_string(s.min_eigenvalue()) +
                           " below -" + std::to_string(clamp_tol));
  return s.rebuild(
      [](double t) { return t > 0.0 ? std::sqrt(t) : 0.0; });
}

HermitianMatrix inv(const HermitianMatrix& a, double floor) {
  const SpectralDecomposition s = eig_hermitian(a);
  if (s.min_eigenvalue() <= floor)
    throw NotPositiveError("inv: min eigenvalue " +
                           std::to_string(s.min_eigenvalue()) +
                           " at or below floor " + std::to_string(floor) +
                           "; input must be strictly positive");
  return s.rebuild([](double t) { return 1.0 / t; });
}

}  // namespace llab
