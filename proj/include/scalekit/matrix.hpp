// SPDX-License-Identifier: MIT
#pragma once
/// \file matrix.hpp
/// \brief Minimal dense row-major matrix and vector containers.
///
/// scalekit works at desk scale (dimensions in the tens), so the container is
/// deliberately plain: contiguous row-major storage, no views, no expression
/// templates. All numeric work happens in the kernels and linalg layers.

#include <cassert>
#include <cstddef>
#include <vector>

namespace scalekit {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {
    assert(r >= 0 && c >= 0);
  }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  /// Pointer to the contiguous i-th row.
  double* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

}  // namespace scalekit
