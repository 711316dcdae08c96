#include <vector>

#include "doctest.h"
#include "llab/kernels.hpp"
#include "llab/rng.hpp"

namespace {

using llab::Rng;
using llab::kernels::cplx;

std::vector<cplx> random_buffer(int n, Rng& rng) {
  std::vector<cplx> v(n);
  for (cplx& x : v) x = cplx(rng.normal(), rng.normal());
  return v;
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(a[i]));
  }
  return num / (1.0 + den);
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  const auto& scalar = llab::kernels::scalar_table();
  if (!llab::kernels::avx2_available()) {
    MESSAGE("AVX2 unavailable on this host, scalar-only run");
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  const auto& avx2 = llab::kernels::avx2_table();
  Rng rng(20240817);
  for (int m : {1, 2, 3, 5, 8, 13}) {
    const int k = m + 1, n = m + 2;
    const auto a = random_buffer(m * k, rng);
    const auto b = random_buffer(k * n, rng);
    std::vector<cplx> c_s(m * n), c_v(m * n);
    scalar.gemm(m, k, n, a.data(), b.data(), c_s.data());
    avx2.gemm(m, k, n, a.data(), b.data(), c_v.data());
    CHECK(rel_diff(c_s, c_v) <= 1e-13);

    const auto x = random_buffer(m * n, rng);
    const auto y = random_buffer(m * n, rng);
    const cplx alpha(rng.normal(), rng.normal());
    const cplx beta(rng.normal(), rng.normal());
    std::vector<cplx> o_s(m * n), o_v(m * n);
    scalar.axpby(m * n, alpha, x.data(), beta, y.data(), o_s.data());
    avx2.axpby(m * n, alpha, x.data(), beta, y.data(), o_v.data());
    CHECK(rel_diff(o_s, o_v) <= 1e-13);

    const double f_s = scalar.frob_sq(m * n, x.data());
    const double f_v = avx2.frob_sq(m * n, x.data());
    CHECK(std::abs(f_s - f_v) <= 1e-13 * (1.0 + f_s));

    CHECK(scalar.max_abs_sq(m * n, x.data()) ==
          doctest::Approx(avx2.max_abs_sq(m * n, x.data())).epsilon(1e-13));
  }
#endif
}

TEST_CASE("kernel variant can be forced by name") {
  llab::kernels::force("scalar");
  CHECK(std::string(llab::kernels::active().name) == "scalar");
  if (llab::kernels::avx2_available()) {
    llab::kernels::force("avx2");
    CHECK(std::string(llab::kernels::active().name) == "avx2");
  }
  CHECK_THROWS(llab::kernels::force("neon"));
  llab::kernels::force("scalar");
  llab::kernels::force(llab::kernels::avx2_available() ? "avx2" : "scalar");
}
