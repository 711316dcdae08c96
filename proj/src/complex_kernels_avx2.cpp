// AVX2 variants of the complex kernels. Compiled with -mavx2 only; the table
// is reached through runtime dispatch, never called on machines without AVX2.

#include "llab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace llab::kernels {

namespace {

// Two complex doubles per __m256d, interleaved [re0, im0, re1, im1].
//
// acc += s * x for complex scalar s broadcast over a row:
//   t = [sr*xr0, sr*xi0, sr*xr1, sr*xi1]
//   u = [si*xi0, si*xr0, si*xi1, si*xr1]
//   addsub(t, u) = [t0-u0, t1+u1, t2-u2, t3+u3]  -- exactly the complex mul.
inline __m256d cmul_acc(__m256d acc, __m256d vsr, __m256d vsi, __m256d vx) {
  const __m256d t = _mm256_mul_pd(vsr, vx);
  const __m256d xswap = _mm256_permute_pd(vx, 0x5);
  const __m256d u = _mm256_mul_pd(vsi, xswap);
  return _mm256_add_pd(acc, _mm256_addsub_pd(t, u));
}

void gemm_avx2(int m, int k, int n, const cplx* a, const cplx* b, cplx* c) {
  const int nvec = n / 2 * 2;
  for (int i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + static_cast<size_t>(i) * n);
    for (int j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const cplx s = a[static_cast<size_t>(i) * k + l];
      const double sr = s.real(), si = s.imag();
      const __m256d vsr = _mm256_set1_pd(sr);
      const __m256d vsi = _mm256_set1_pd(si);
      const double* brow =
          reinterpret_cast<const double*>(b + static_cast<size_t>(l) * n);
      int j = 0;
      for (; j < nvec; j += 2) {
        const __m256d vx = _mm256_loadu_pd(brow + 2 * j);
        const __m256d acc = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, cmul_acc(acc, vsr, vsi, vx));
      }
      for (; j < n; ++j) {
        const double xr = brow[2 * j], xi = brow[2 * j + 1];
        crow[2 * j] += sr * xr - si * xi;
        crow[2 * j + 1] += sr * xi + si * xr;
      }
    }
  }
}

void axpby_avx2(int n, cplx alpha, const cplx* x, cplx beta, const cplx* y,
                cplx* out) {
  const __m256d var = _mm256_set1_pd(alpha.real());
  const __m256d vai = _mm256_set1_pd(alpha.imag());
  const __m256d vbr = _mm256_set1_pd(beta.real());
  const __m256d vbi = _mm256_set1_pd(beta.imag());
  const __m256d zero = _mm256_setzero_pd();
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double* od = reinterpret_cast<double*>(out);
  const int nvec = n / 2 * 2;
  int i = 0;
  for (; i < nvec; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    const __m256d ax = cmul_acc(zero, var, vai, vx);
    _mm256_storeu_pd(od + 2 * i, cmul_acc(ax, vbr, vbi, vy));
  }
  const double ar = alpha.real(), ai = alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  for (; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    od[2 * i] = (ar * xr - ai * xi) + (br * yr - bi * yi);
    od[2 * i + 1] = (ar * xi + ai * xr) + (br * yi + bi * yr);
  }
}

double frob_sq_avx2(int n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  const int total = 2 * n;
  const int nvec = total / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i < nvec; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < total; ++i) sum += xd[i] * xd[i];
  return sum;
}

double max_abs_sq_avx2(int n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  const int nvec = n / 2 * 2;
  __m256d best = _mm256_setzero_pd();
  int i = 0;
  for (; i < nvec; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    // |z|^2 in lanes 0 and 2 after adding the swapped squares.
    const __m256d mag = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
    best = _mm256_max_pd(best, mag);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0] > lanes[2] ? lanes[0] : lanes[2];
  for (; i < n; ++i) {
    const double v = xd[2 * i] * xd[2 * i] + xd[2 * i + 1] * xd[2 * i + 1];
    if (v > out) out = v;
  }
  return out;
}

const KernelTable kAvx2{"avx2", gemm_avx2, axpby_avx2, frob_sq_avx2,
                        max_abs_sq_avx2};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace llab::kernels

#endif  // x86_64
