// SPDX-License-Identifier: MIT
/// \file frame.cpp
/// \brief Unit-norm frame validation, generation, and basic operations.

#include "scalekit/frame.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "scalekit/kernels.hpp"
#include "scalekit/linalg.hpp"
#include "scalekit/rng.hpp"

namespace scalekit {

namespace {

/// Numerical row rank of the m x n transposed-columns matrix, which equals
/// the rank of the frame. Pivoted QR sees exact deficiency that a Gram
/// eigenvalue test would blur.
int frame_rank(const Mat& cols_t) {
  const int n = cols_t.cols;
  const double rtol = n * std::numeric_limits<double>::epsilon();
  return la::cpqr(cols_t, rtol).rank;
}

}  // namespace

Mat UnitNormFrame::to_matrix() const {
  return la::transpose(cols_t_);
}

UnitNormFrame UnitNormFrame::from_valid_rows(Mat cols_t) {
  return UnitNormFrame(std::move(cols_t));
}

UnitNormFrame validate_frame(const Mat& columns, double tol) {
  const int n = columns.rows;
  const int m = columns.cols;
  if (n < 1) raise(errc::dimension_error, "frame needs at least one ambient dimension");
  if (m < n)
    raise(errc::dimension_error,
          "frame needs at least n columns (got m=" + std::to_string(m) +
              ", n=" + std::to_string(n) + ")");

  Mat cols_t(m, n);
  for (int i = 0; i < m; ++i) {
    double* phi = cols_t.row(i);
    for (int k = 0; k < n; ++k) phi[k] = columns(k, i);
    const double nrm = std::sqrt(kernels::nrm2sq(phi, static_cast<std::size_t>(n)));
    if (nrm < tol)
      raise(errc::zero_column, "column " + std::to_string(i) + " has norm " + std::to_string(nrm));
    if (std::abs(nrm - 1.0) > tol)
      raise(errc::invalid_norm,
            "column " + std::to_string(i) + " has norm " + std::to_string(nrm) +
                " (not unit within tolerance)");
    kernels::scal(1.0 / nrm, phi, static_cast<std::size_t>(n));
  }

  if (frame_rank(cols_t) < n)
    raise(errc::not_a_frame, "columns do not span R^" + std::to_string(n));
  return UnitNormFrame::from_valid_rows(std::move(cols_t));
}

UnitNormFrame random_unit_frame(int m, int n, std::uint64_t seed) {
  if (n < 1 || m < n) raise(errc::dimension_error, "random_unit_frame needs m >= n >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat cols_t(m, n);
    for (int i = 0; i < m; ++i) {
      double* phi = cols_t.row(i);
      double nrm2;
      do {
        for (int k = 0; k < n; ++k) phi[k] = rng.normal();
        nrm2 = kernels::nrm2sq(phi, static_cast<std::size_t>(n));
      } while (nrm2 < 1e-24);
      kernels::scal(1.0 / std::sqrt(nrm2), phi, static_cast<std::size_t>(n));
    }
    if (frame_rank(cols_t) == n) return UnitNormFrame::from_valid_rows(std::move(cols_t));
  }
  raise(errc::not_a_frame, "random frame generation kept hitting rank deficiency");
}

GramSquared squared_gram(const UnitNormFrame& f) {
  const int m = f.m();
  const std::size_t n = static_cast<std::size_t>(f.n());
  GramSquared g{Mat(m, m)};
  for (int i = 0; i < m; ++i) {
    g.f(i, i) = 1.0;
    for (int j = i + 1; j < m; ++j) {
      const double d = kernels::dot(f.col(i), f.col(j), n);
      g.f(i, j) = d * d;
      g.f(j, i) = d * d;
    }
  }
  return g;
}

double frame_potential(const UnitNormFrame& f) {
  const GramSquared g = squared_gram(f);
  return kernels::sum(g.f.data.data(), g.f.data.size());
}

SymmetrizedSet symmetrize(const UnitNormFrame& f) {
  const int m = f.m(), n = f.n();
  SymmetrizedSet s{Mat(2 * m, n)};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) {
      s.points_t(i, k) = f.entry(k, i);
      s.points_t(m + i, k) = -f.entry(k, i);
    }
  return s;
}

Mat weighted_frame_operator(const UnitNormFrame& f, const Vec& weights) {
  const int m = f.m(), n = f.n();
  if (static_cast<int>(weights.size()) != m)
    raise(errc::dimension_error, "weight vector length must equal the number of columns");
  for (int i = 0; i < m; ++i)
    if (!(weights[i] >= 0.0))
      raise(errc::negative_weight, "weight " + std::to_string(i) + " is negative (or NaN)");
  Mat s(n, n);
  for (int i = 0; i < m; ++i)
    if (weights[i] != 0.0)
      kernels::syr(s.data.data(), weights[i], f.col(i), static_cast<std::size_t>(n));
  return s;
}

}  // namespace scalekit
