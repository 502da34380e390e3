#include "szg/kernels.hpp"

#include <immintrin.h>

namespace szg::simd::detail {

namespace {
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}
}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
  std::size_t n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += x[i] * y[i];
  return s;
}

double wdot_avx2(const double* x, const double* y, const double* w, std::size_t n) {
  std::size_t n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), xy, acc);
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  std::size_t n4 = n & ~std::size_t(3);
  __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, vy);
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  std::size_t n4 = n & ~std::size_t(3);
  __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (std::size_t i = n4; i < n; ++i) x[i] *= a;
}

}  // namespace szg::simd::detail
