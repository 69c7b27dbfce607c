// SPDX-License-Identifier: Apache-2.0
/// @file kernels.hpp
/// @brief Data-parallel arithmetic kernels with scalar reference and AVX2
///        variants selected at runtime.
///
/// The solver's inner loops are weighted accumulations over stored history
/// states and dense matrix-vector products with the nonlocal operator
/// matrix.  Both are provided here in two implementations:
///   - kernels::scalar : portable reference loops
///   - kernels::avx2   : AVX2+FMA intrinsics (x86-64 only)
/// The top-level entry points dispatch once per call on a cached CPU probe.
/// Results of the two variants agree to roundoff (FMA and reassociation
/// change rounding, not values beyond ~1 ulp per term); equivalence is
/// enforced by tests at rel. 1e-13.

#pragma once

#include <cstddef>

namespace fracldg::kernels {

enum class SimdLevel { scalar = 0, avx2 = 1 };

/// Level chosen by the CPU probe (or forced via force_level / the
/// FRACLDG_SIMD environment variable: "scalar", "avx2", "auto").
SimdLevel active_level();

/// Override the dispatch level; avx2 on a machine without AVX2 falls back
/// to scalar.  Intended for tests and the CLI.
void force_level(SimdLevel lvl);

const char* level_name(SimdLevel lvl);

/// y[i] += a * x[i]
void axpy(double* y, double a, const double* x, std::size_t n);

/// y[i] += sum_l c[l] * xs[l][i]   (history accumulation)
void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n);

/// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

/// y = A x with A row-major (rows x cols), y must not alias x.
void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols);

namespace scalar {
void axpy(double* y, double a, const double* x, std::size_t n);
void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols);
}  // namespace scalar

namespace avx2 {
/// Present only when compiled for x86-64; guarded by available().
bool available();
void axpy(double* y, double a, const double* x, std::size_t n);
void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols);
}  // namespace avx2

}  // namespace fracldg::kernels
