// SPDX-License-Identifier: MIT
/// \file kernels_scalar.cpp
/// \brief Portable reference implementations of the dense kernels.

#include "scalekit/kernels.hpp"

namespace scalekit::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(a + i * cols, x, cols);
}

void syr_scalar(double* a, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) axpy_scalar(alpha * x[i], x, a + i * n, n);
}

double quad_scalar(const double* a, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * dot_scalar(a + i * n, x, n);
  return acc;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend = {
      "scalar",    dot_scalar,  nrm2sq_scalar, sum_scalar, axpy_scalar,
      scal_scalar, gemv_scalar, syr_scalar,    quad_scalar,
  };
  return backend;
}

}  // namespace scalekit::kernels
