// SPDX-License-Identifier: Apache-2.0
/// @file kernels_avx2.cpp
/// @brief AVX2+FMA variants of the arithmetic kernels.
///
/// This translation unit is compiled with -mavx2 -mfma on x86-64; callers
/// must check available() (done once by the dispatcher).

#include "fracldg/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#define FRACLDG_AVX2_BUILT 1
#include <immintrin.h>
#endif

namespace fracldg::kernels::avx2 {

bool available() {
#ifdef FRACLDG_AVX2_BUILT
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#ifdef FRACLDG_AVX2_BUILT

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n) {
  std::size_t l = 0;
  for (; l + 4 <= m; l += 4) {
    const __m256d c0 = _mm256_set1_pd(c[l]);
    const __m256d c1 = _mm256_set1_pd(c[l + 1]);
    const __m256d c2 = _mm256_set1_pd(c[l + 2]);
    const __m256d c3 = _mm256_set1_pd(c[l + 3]);
    const double *x0 = xs[l], *x1 = xs[l + 1], *x2 = xs[l + 2],
                 *x3 = xs[l + 3];
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256d acc = _mm256_loadu_pd(y + i);
      acc = _mm256_fmadd_pd(c0, _mm256_loadu_pd(x0 + i), acc);
      acc = _mm256_fmadd_pd(c1, _mm256_loadu_pd(x1 + i), acc);
      acc = _mm256_fmadd_pd(c2, _mm256_loadu_pd(x2 + i), acc);
      acc = _mm256_fmadd_pd(c3, _mm256_loadu_pd(x3 + i), acc);
      _mm256_storeu_pd(y + i, acc);
    }
    for (; i < n; ++i)
      y[i] += c[l] * x0[i] + c[l + 1] * x1[i] + c[l + 2] * x2[i] +
              c[l + 3] * x3[i];
  }
  for (; l < m; ++l) axpy(y, c[l], xs[l], n);
}

static inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                         _mm256_loadu_pd(y + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

#else  // !FRACLDG_AVX2_BUILT: defer to the scalar reference.

void axpy(double* y, double a, const double* x, std::size_t n) {
  scalar::axpy(y, a, x, n);
}
void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n) {
  scalar::weighted_accumulate(y, c, xs, m, n);
}
double dot(const double* x, const double* y, std::size_t n) {
  return scalar::dot(x, y, n);
}
void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  scalar::matvec(a, x, y, rows, cols);
}

#endif

}  // namespace fracldg::kernels::avx2
