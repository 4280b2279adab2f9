// SPDX-License-Identifier: MIT
#pragma once
/// \file kernels.hpp
/// \brief Low-level dense kernels with runtime-dispatched SIMD variants.
///
/// Every kernel has a scalar reference implementation; on x86-64 builds there
/// is an AVX2+FMA variant of each. The active backend is picked once from
/// CPUID and can be forced through the SCALEKIT_SIMD environment variable
/// ("scalar", "avx2" or "auto"). The variants are equivalence-tested against
/// the scalar reference; they may differ from it at the rounding level only
/// (FMA contraction and vector accumulation reorder the sums).

#include <cstddef>

namespace scalekit::kernels {

/// Function table for one backend. Matrices are dense row-major.
struct Backend {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*nrm2sq)(const double* x, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);  ///< y += a*x
  void (*scal)(double a, double* x, std::size_t n);                   ///< x *= a
  /// y = A*x for row-major A (rows x cols); y must not alias x.
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  /// A += alpha * x * x^T for row-major symmetric storage (n x n).
  void (*syr)(double* a, double alpha, const double* x, std::size_t n);
  /// x^T A x for row-major symmetric A (n x n).
  double (*quad)(const double* a, const double* x, std::size_t n);
};

/// Portable reference backend (always available).
const Backend& scalar_backend();

/// AVX2+FMA backend, or nullptr when the build target or CPU lacks it.
const Backend* avx2_backend();

/// Backend currently in use. Selected on first call: honours SCALEKIT_SIMD,
/// otherwise picks the best variant the CPU supports.
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "auto").
/// Returns false (and leaves the selection unchanged) if unavailable.
bool select(const char* name);

inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline double nrm2sq(const double* x, std::size_t n) { return active().nrm2sq(x, n); }
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scal(double a, double* x, std::size_t n) { active().scal(a, x, n); }
inline void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  active().gemv(a, rows, cols, x, y);
}
inline void syr(double* a, double alpha, const double* x, std::size_t n) { active().syr(a, alpha, x, n); }
inline double quad(const double* a, const double* x, std::size_t n) { return active().quad(a, x, n); }

}  // namespace scalekit::kernels
