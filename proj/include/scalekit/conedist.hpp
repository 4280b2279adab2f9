// SPDX-License-Identifier: MIT
#pragma once
/// \file conedist.hpp
/// \brief Distance from the identity to the cone of non-negative column
///        scalings {sum_i c_i phi_i phi_i^T : c_i >= 0}.
///
/// The Frobenius-norm projection is solved as a non-negative least-squares
/// problem in the isometric vectorization of symmetric matrices: packing the
/// upper triangle with sqrt(2) weights off the diagonal makes
/// <svec(uu^T), svec(vv^T)> = <u,v>^2, so the matrix problem becomes
/// min_{c>=0} ||A c - svec(I)||_2 with A's columns the vectorized rank-ones.

#include "scalekit/frame.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit::cone {

/// Result of the cone projection.
struct ConeFit {
  Vec weights;                              ///< the minimizer c-hat, entrywise >= 0
  double distance = 0.0;                    ///< D = ||sum c_i phi_i phi_i^T - I||_F
  double residual_matrix_norm_check = 0.0;  ///< same norm recomputed in matrix form
  int iterations = 0;                       ///< active-set (outer) iterations
  double tol = 0.0;                         ///< KKT tolerance used
};

/// Isometric vectorization dimension for n x n symmetric matrices.
inline int svec_dim(int n) { return n * (n + 1) / 2; }

/// svec_dim(n) x m matrix whose j-th column is svec(v_j v_j^T) for the j-th
/// row v_j of vectors_t (vectors need not be unit norm).
Mat rankone_design(const Mat& vectors_t);

/// svec(I_n).
Vec svec_identity(int n);

/// Generic dense non-negative least squares min_{x>=0} ||a x - b||_2 by the
/// Lawson-Hanson active-set method. On return the KKT conditions hold with
/// residual <= tol on the gradient 2 a^T (a x - b): zero on the support,
/// >= -tol elsewhere.
struct NnlsResult {
  Vec x;
  double residual_norm = 0.0;  ///< ||a x - b||_2, recomputed from scratch
  int iterations = 0;
};
NnlsResult nnls(const Mat& a, const Vec& b, double tol, int max_iterations);

/// Projects the identity onto the scaling cone of the frame.
/// tol is the KKT tolerance (default 1e-10); max_iterations 0 means 50*m.
/// Errors: MaxIterations.
ConeFit solve_cone_projection(const UnitNormFrame& frame, double tol = 1e-10,
                              int max_iterations = 0);

/// g(c) = c^T F c - 2 1^T c + n with F the squared Gram matrix; equals
/// ||sum c_i phi_i phi_i^T - I||_F^2. Errors: NegativeWeight, DimensionError.
double objective(const UnitNormFrame& frame, const Vec& weights);

/// sqrt(n - m^2 / FP(frame)); an a-priori upper bound on the cone distance,
/// itself strictly below sqrt(n-1).
double potential_upper_bound(const UnitNormFrame& frame);

}  // namespace scalekit::cone
