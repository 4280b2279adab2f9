// SPDX-License-Identifier: MIT
#pragma once
/// \file frame.hpp
/// \brief Unit-norm frames and the basic frame-theoretic operations.
///
/// A unit-norm frame is a set of m unit vectors spanning R^n (m >= n).
/// Columns are stored transposed (an m x n matrix whose i-th row is phi_i)
/// so each frame vector is contiguous in memory.

#include <cstdint>
#include <vector>

#include "scalekit/error.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit {

class UnitNormFrame {
 public:
  int n() const { return cols_t_.cols; }
  int m() const { return cols_t_.rows; }

  /// Contiguous n-vector phi_i.
  const double* col(int i) const { return cols_t_.row(i); }
  double entry(int coord, int index) const { return cols_t_(index, coord); }

  /// m x n matrix whose i-th row is phi_i^T.
  const Mat& columns_t() const { return cols_t_; }

  /// Conventional n x m layout (column i = phi_i).
  Mat to_matrix() const;

  /// Wraps already-validated unit rows without rechecking norms or rank.
  /// Internal constructor for generators whose output is valid by build.
  static UnitNormFrame from_valid_rows(Mat cols_t);

 private:
  explicit UnitNormFrame(Mat cols_t) : cols_t_(std::move(cols_t)) {}
  Mat cols_t_;
};

/// m x m matrix of squared inner products f_ij = <phi_i, phi_j>^2.
struct GramSquared {
  Mat f;
};

/// The 2m symmetrized points {phi_i} followed by {-phi_i}, one per row.
struct SymmetrizedSet {
  Mat points_t;
};

/// Validates an n x m matrix of columns: every column norm within tol of 1
/// (columns are then renormalized exactly), full row rank n, m >= n >= 1.
/// Errors: ZeroColumn, InvalidNorm, NotAFrame, DimensionError.
UnitNormFrame validate_frame(const Mat& columns, double tol = 1e-8);

/// m unit vectors drawn independently and uniformly on S^{n-1}
/// (normalized Gaussians; column i consumes draws i*n..i*n+n-1 in order).
/// Redraws in the measure-zero event of rank deficiency.
UnitNormFrame random_unit_frame(int m, int n, std::uint64_t seed);

/// Frame potential FP = sum_{i,j} <phi_i,phi_j>^2; computed as the sum of
/// all entries of squared_gram (same arithmetic path).
double frame_potential(const UnitNormFrame& f);

GramSquared squared_gram(const UnitNormFrame& f);

SymmetrizedSet symmetrize(const UnitNormFrame& f);

/// S = sum_i weights_i * phi_i phi_i^T. Errors: NegativeWeight, DimensionError.
Mat weighted_frame_operator(const UnitNormFrame& f, const Vec& weights);

}  // namespace scalekit
