// SPDX-License-Identifier: Apache-2.0
/// @file kernels.cpp
/// @brief Runtime dispatch between the scalar and AVX2 kernel variants.

#include "fracldg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fracldg::kernels {

namespace {

SimdLevel probe() {
  if (const char* env = std::getenv("FRACLDG_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::scalar;
    if (std::strcmp(env, "avx2") == 0)
      return avx2::available() ? SimdLevel::avx2 : SimdLevel::scalar;
    // anything else (incl. "auto"): fall through to the CPU probe
  }
  return avx2::available() ? SimdLevel::avx2 : SimdLevel::scalar;
}

SimdLevel g_level = probe();

}  // namespace

SimdLevel active_level() { return g_level; }

void force_level(SimdLevel lvl) {
  if (lvl == SimdLevel::avx2 && !avx2::available()) lvl = SimdLevel::scalar;
  g_level = lvl;
}

const char* level_name(SimdLevel lvl) {
  return lvl == SimdLevel::avx2 ? "avx2" : "scalar";
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  if (g_level == SimdLevel::avx2)
    avx2::axpy(y, a, x, n);
  else
    scalar::axpy(y, a, x, n);
}

void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n) {
  if (g_level == SimdLevel::avx2)
    avx2::weighted_accumulate(y, c, xs, m, n);
  else
    scalar::weighted_accumulate(y, c, xs, m, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  return g_level == SimdLevel::avx2 ? avx2::dot(x, y, n)
                                    : scalar::dot(x, y, n);
}

void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  if (g_level == SimdLevel::avx2)
    avx2::matvec(a, x, y, rows, cols);
  else
    scalar::matvec(a, x, y, rows, cols);
}

}  // namespace fracldg::kernels
