#include "llab/matrix.hpp"

#include <cmath>
#include <string>

#include "llab/kernels.hpp"

namespace llab {

namespace {

void require_same_shape(const Cmat& a, const Cmat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

}  // namespace

Cmat::Cmat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimensionError("Cmat: negative dimension");
  data_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
}

Cmat::Cmat(int rows, int cols, std::initializer_list<cplx> entries)
    : Cmat(rows, cols) {
  if (static_cast<int>(entries.size()) != rows * cols)
    throw DimensionError("Cmat: initializer size mismatch");
  int i = 0;
  for (const cplx& v : entries) data_[i++] = v;
}

Cmat Cmat::identity(int n) {
  Cmat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Cmat operator+(const Cmat& a, const Cmat& b) {
  return linear_combination(1.0, a, 1.0, b);
}

Cmat operator-(const Cmat& a, const Cmat& b) {
  return linear_combination(1.0, a, -1.0, b);
}

Cmat operator*(const Cmat& a, const Cmat& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimension mismatch");
  Cmat c(a.rows(), b.cols());
  kernels::active().gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(),
                         c.data());
  return c;
}

Cmat operator*(cplx s, const Cmat& a) {
  Cmat out(a.rows(), a.cols());
  kernels::active().axpby(a.size(), s, a.data(), cplx(0.0, 0.0), a.data(),
                          out.data());
  return out;
}

Cmat adjoint(const Cmat& a) {
  Cmat out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

Cmat linear_combination(cplx alpha, const Cmat& a, cplx beta, const Cmat& b) {
  require_same_shape(a, b, "linear_combination");
  Cmat out(a.rows(), a.cols());
  kernels::active().axpby(a.size(), alpha, a.data(), beta, b.data(),
                          out.data());
  return out;
}

double max_abs(const Cmat& a) {
  if (a.size() == 0) return 0.0;
  return std::sqrt(kernels::active().max_abs_sq(a.size(), a.data()));
}

double fro_norm(const Cmat& a) {
  if (a.size() == 0) return 0.0;
  return std::sqrt(kernels::active().frob_sq(a.size(), a.data()));
}

double hermitian_defect(const Cmat& a) {
  if (!a.square()) throw DimensionError("hermitian_defect: not square");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j) {
      const double d = std::abs(a(i, j) - std::conj(a(j, i)));
      if (d > worst) worst = d;
    }
  return worst;
}

HermitianMatrix::HermitianMatrix(Cmat m, double defect_tol) {
  if (!m.square()) throw DimensionError("HermitianMatrix: not square");
  if (m.rows() < 1) throw DimensionError("HermitianMatrix: dim must be >= 1");
  const double scale = max_abs(m);
  const double abs_defect = hermitian_defect(m);
  defect_ = scale > 0.0 ? abs_defect / scale : 0.0;
  if (defect_ > defect_tol)
    throw NotHermitianError("HermitianMatrix: relative defect " +
                            std::to_string(defect_) + " exceeds " +
                            std::to_string(defect_tol));
  const int n = m.rows();
  mat_ = Cmat(n, n);
  for (int i = 0; i < n; ++i) {
    mat_(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      mat_(i, j) = v;
      mat_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(Cmat::identity(n));
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(Cmat(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  Cmat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i)
    m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::real(int n,
                                      std::initializer_list<double> entries) {
  if (static_cast<int>(entries.size()) != n * n)
    throw DimensionError("HermitianMatrix::real: initializer size mismatch");
  Cmat m(n, n);
  int i = 0;
  for (double v : entries) {
    m(i / n, i % n) = v;
    ++i;
  }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() - b.mat());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.mat());
}

HermitianMatrix congruence(const Cmat& c, const HermitianMatrix& a) {
  if (c.rows() != a.dim())
    throw DimensionError("congruence: C rows must match dim(A)");
  return HermitianMatrix(adjoint(c) * (a.mat() * c));
}

}  // namespace llab
