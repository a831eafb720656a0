// Compiled with -mavx2 -mfma. Nothing in here may run unless dispatch.cpp has
// confirmed CPU support.

#include <immintrin.h>

#include <algorithm>

#include "cplab/kernels.hpp"

namespace cplab::kernels {
namespace {

// One __m256d holds two interleaved complex numbers [re0, im0, re1, im1].

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (ar + i ai) * b for both lanes of b.
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double are = a[i * k + p].real();
      const double aim = a[i * k + p].imag();
      if (are == 0.0 && aim == 0.0) continue;
      const __m256d ar = _mm256_set1_pd(are);
      const __m256d ai = _mm256_set1_pd(aim);
      const cplx* brow = b + p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        store2(crow + j, _mm256_add_pd(load2(crow + j), cmul_bcast(ar, ai, load2(brow + j))));
      }
      for (; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = cplx(crow[j].real() + (are * br - aim * bi), crow[j].imag() + (are * bi + aim * br));
      }
    }
  }
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(ar, ai, load2(x + i))));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(same);
  double im = hsum(_mm256_mul_pd(cross, sign));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm_sq_avx2(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

constexpr KernelTable kAvx2{"avx2", gemm_avx2, axpy_avx2, dotc_avx2, norm_sq_avx2};

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept { return kAvx2; }

}  // namespace cplab::kernels
