// SPDX-License-Identifier: MIT
#pragma once
/// \file linalg.hpp
/// \brief Small dense linear algebra: symmetric eigensolver, Cholesky,
///        column-pivoted QR, and random orthogonal matrices.
///
/// Everything here targets matrices with at most a few dozen rows/columns,
/// so the implementations favour robustness and determinism over blocking.

#include <vector>

#include "scalekit/matrix.hpp"
#include "scalekit/rng.hpp"

namespace scalekit::la {

Mat transpose(const Mat& a);
Mat matmul(const Mat& a, const Mat& b);
double fro_norm(const Mat& a);
/// ||a - I||_F for square a.
double fro_dist_identity(const Mat& a);

/// Symmetric eigendecomposition by cyclic Jacobi sweeps.
/// On return: s = V diag(evals) V^T with evals ascending and V's j-th COLUMN
/// the eigenvector for evals[j]. Input must be symmetric.
void jacobi_eigh(const Mat& s, Vec& evals, Mat& evecs);

/// Lower Cholesky factor of an SPD matrix; returns false if a pivot is
/// not strictly positive (matrix not SPD to working precision).
bool cholesky(const Mat& s, Mat& lower);

/// Inverse of an SPD matrix via Cholesky. Throws Error(errc::not_spd).
Mat spd_inverse(const Mat& s);

/// log(det) of an SPD matrix via Cholesky. Throws Error(errc::not_spd).
double spd_logdet(const Mat& s);

/// Householder QR with column pivoting of an r x c matrix (any shape).
struct Cpqr {
  Mat qr;                 ///< packed factors: R on/above diagonal, Householder vectors below
  Vec tau;                ///< Householder coefficients
  std::vector<int> perm;  ///< perm[k] = original column index factored at position k
  int rank = 0;           ///< numerical rank at the relative tolerance used
};

/// Factor a with column pivoting; rank counts diagonals with
/// |R_kk| > rtol * |R_00|.
Cpqr cpqr(const Mat& a, double rtol);

/// Basic least-squares solution of a x ~= b using the factorization: the
/// rank leading pivoted columns get the triangular solve, the rest are 0.
/// b has a.rows entries; the result has a.cols entries.
Vec cpqr_solve(const Cpqr& f, Vec b);

/// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the sign
/// convention R_ii > 0.
Mat random_orthogonal(int n, Rng& rng);

}  // namespace scalekit::la
