#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "llab/errors.hpp"

namespace llab {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Value type, immutable by convention once
// built; all arithmetic returns fresh matrices.
class Cmat {
 public:
  Cmat() = default;
  Cmat(int rows, int cols);
  Cmat(int rows, int cols, std::initializer_list<cplx> entries);

  static Cmat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  const cplx& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  int size() const { return rows_ * cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

Cmat operator+(const Cmat& a, const Cmat& b);
Cmat operator-(const Cmat& a, const Cmat& b);
Cmat operator*(const Cmat& a, const Cmat& b);
Cmat operator*(cplx s, const Cmat& a);
inline Cmat operator*(double s, const Cmat& a) { return cplx(s, 0.0) * a; }

Cmat adjoint(const Cmat& a);
// alpha*a + beta*b with shape check
Cmat linear_combination(cplx alpha, const Cmat& a, cplx beta, const Cmat& b);

double max_abs(const Cmat& a);
double fro_norm(const Cmat& a);
// max over i,j of |a_ij - conj(a_ji)| (square input)
double hermitian_defect(const Cmat& a);

// n x n complex Hermitian matrix, the operand of every operation in this
// library. Construction symmetrizes through (M + M*)/2 and records the
// pre-symmetrization defect relative to the largest entry; a relative defect
// above `defect_tol` (default 1e-8) is an error rather than a silent repair.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Cmat m, double defect_tol = kDefectTol);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  // Real symmetric convenience constructor (row-major entries).
  static HermitianMatrix real(int n, std::initializer_list<double> entries);

  int dim() const { return mat_.rows(); }
  const Cmat& mat() const { return mat_; }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }
  double defect() const { return defect_; }

  static constexpr double kDefectTol = 1e-8;

 private:
  Cmat mat_;
  double defect_ = 0.0;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

// C* A C; Hermitian for Hermitian A, so the result is symmetrized. C may be
// rectangular (rows = dim of A).
HermitianMatrix congruence(const Cmat& c, const HermitianMatrix& a);

inline double max_abs(const HermitianMatrix& a) { return max_abs(a.mat()); }

}  // namespace llab
