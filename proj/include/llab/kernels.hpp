#pragma once

#include <complex>
#include <string>

namespace llab::kernels {

using cplx = std::complex<double>;

// Hot inner loops of the matrix layer. Scalar reference implementations and
// an AVX2 variant share one signature set; the active table is picked once at
// startup (LOEWNER_LAB_KERNEL=scalar|avx2 overrides the cpuid probe). Both
// variants use the same per-element operation order (mul/mul/sub/add, no FMA
// contraction) so they agree to the last few ulps; the equivalence tests in
// tests/ hold them to 1e-13 relative.

// C (m x n) = A (m x k) * B (k x n), row-major, C overwritten.
using GemmFn = void (*)(int m, int k, int n, const cplx* a, const cplx* b,
                        cplx* c);
// out = alpha*x + beta*y, elementwise over n complex values.
using AxpbyFn = void (*)(int n, cplx alpha, const cplx* x, cplx beta,
                         const cplx* y, cplx* out);
// sum of |x_i|^2
using FrobSqFn = double (*)(int n, const cplx* x);
// max of |x_i|^2
using MaxAbsSqFn = double (*)(int n, const cplx* x);

struct KernelTable {
  const char* name;
  GemmFn gemm;
  AxpbyFn axpby;
  FrobSqFn frob_sq;
  MaxAbsSqFn max_abs_sq;
};

const KernelTable& scalar_table();
bool avx2_available();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif

// Runtime-selected table. Thread-safe after first call.
const KernelTable& active();

// Force a variant by name ("scalar" or "avx2"); throws if unavailable.
// Intended for tests and benchmarking.
void force(const std::string& name);

}  // namespace llab::kernels
