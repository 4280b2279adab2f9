// SPDX-License-Identifier: MIT
/// \file kernels_avx2.cpp
/// \brief AVX2+FMA variants of the dense kernels (x86-64 only).
///
/// This translation unit is compiled with -mavx2 -mfma; its functions are
/// only ever called after a runtime CPUID check, so the rest of the library
/// keeps the default ISA baseline.

#include "scalekit/kernels.hpp"

#include <immintrin.h>

namespace scalekit::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double nrm2sq_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = hsum(acc0);
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void gemv_avx2(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_avx2(a + i * cols, x, cols);
}

void syr_avx2(double* a, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) axpy_avx2(alpha * x[i], x, a + i * n, n);
}

double quad_avx2(const double* a, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * dot_avx2(a + i * n, x, n);
  return acc;
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend = {
      "avx2",    dot_avx2,  nrm2sq_avx2, sum_avx2, axpy_avx2,
      scal_avx2, gemv_avx2, syr_avx2,    quad_avx2,
  };
  return &backend;
}

}  // namespace scalekit::kernels
