#include "llab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace llab::kernels {

namespace {

// Reference gemm. The inner update keeps re/im products separate and applies
// them as (mul, mul, sub/add, add) per element, matching the vector variant's
// lane arithmetic step for step.
void gemm_scalar(int m, int k, int n, const cplx* a, const cplx* b, cplx* c) {
  for (int i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + static_cast<size_t>(i) * n);
    for (int j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const cplx s = a[static_cast<size_t>(i) * k + l];
      const double sr = s.real(), si = s.imag();
      const double* brow =
          reinterpret_cast<const double*>(b + static_cast<size_t>(l) * n);
      for (int j = 0; j < n; ++j) {
        const double xr = brow[2 * j], xi = brow[2 * j + 1];
        crow[2 * j] += sr * xr - si * xi;
        crow[2 * j + 1] += sr * xi + si * xr;
      }
    }
  }
}

void axpby_scalar(int n, cplx alpha, const cplx* x, cplx beta, const cplx* y,
                  cplx* out) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double* od = reinterpret_cast<double*>(out);
  for (int i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    od[2 * i] = (ar * xr - ai * xi) + (br * yr - bi * yi);
    od[2 * i + 1] = (ar * xi + ai * xr) + (br * yi + bi * yr);
  }
}

double frob_sq_scalar(int n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  double acc = 0.0;
  for (int i = 0; i < 2 * n; ++i) acc += xd[i] * xd[i];
  return acc;
}

double max_abs_sq_scalar(int n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = xd[2 * i] * xd[2 * i] + xd[2 * i + 1] * xd[2 * i + 1];
    if (v > best) best = v;
  }
  return best;
}

const KernelTable kScalar{"scalar", gemm_scalar, axpby_scalar, frob_sq_scalar,
                          max_abs_sq_scalar};

const KernelTable* pick() {
  const char* env = std::getenv("LOEWNER_LAB_KERNEL");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2" && avx2_available()) return &avx2_table();
#endif
    if (want == "avx2")
      throw std::runtime_error("LOEWNER_LAB_KERNEL=avx2 but AVX2 unavailable");
    throw std::runtime_error("unknown LOEWNER_LAB_KERNEL value: " + want);
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_available()) return &avx2_table();
#endif
  return &kScalar;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = pick();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void force(const std::string& name) {
  if (name == "scalar") {
    g_active.store(&kScalar, std::memory_order_release);
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2" && avx2_available()) {
    g_active.store(&avx2_table(), std::memory_order_release);
    return;
  }
#endif
  throw std::runtime_error("kernel variant unavailable: " + name);
}

}  // namespace llab::kernels
