// SPDX-License-Identifier: MIT
#pragma once
/// \file oracles.hpp
/// \brief Independent reference implementations used only by the tests.
///
/// Each oracle recomputes a quantity the library produces, by a different
/// algorithm and through a separate linear-algebra path (plain loops and a
/// local Gauss-Jordan inverse; no scalekit kernels), so agreement between
/// the two is meaningful evidence rather than a tautology.

#include <cstdint>
#include <vector>

#include "scalekit/frame.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit::testing {

/// Frame potential by the brute-force double sum over all inner products.
double fp_double_sum(const UnitNormFrame& frame);

/// Weighted frame operator sum_i w_i phi_i phi_i^T by plain triple loop.
Mat rankone_sum(const UnitNormFrame& frame, const Vec& weights);

/// Result of the projected-gradient NNLS oracle.
struct PgNnls {
  Vec x;
  double residual_norm = 0.0;  ///< ||A x - b||_2 at the returned x
  long iterations = 0;
  bool kkt_pass = false;  ///< true when the KKT residual reached kkt_tol
};

/// min ||A x - b||_2 s.t. x >= 0 by FISTA with monotone restart; stops when
/// the KKT residual max(|g_i| on x_i > 0, max(0, -g_i) elsewhere) <= kkt_tol.
PgNnls nnls_pg(const Mat& a, const Vec& b, double kkt_tol = 1e-10,
               long max_iterations = 300000);

/// Result of the lifted MVEE oracle.
struct LiftedMvee {
  Mat x_inv;            ///< n * (sum u p p^T - c c^T), comparable to mvee x_inv
  double det_xinv = 0;  ///< determinant by Gaussian elimination
  Vec center;           ///< should be ~0 for a symmetric point set
  long iterations = 0;
};

/// Minimal enclosing ellipsoid of the 2m points {+-phi_i} computed by the
/// general-position algorithm: lift to R^{n+1} via q = (p; 1), run
/// coordinate ascent with away steps on log det sum u q q^T (fresh O(d^3)
/// inverse every iteration, no incremental updates), then read off the
/// center c = sum u p and shape (1/n)(sum u p p^T - c c^T)^{-1}.
LiftedMvee lifted_mvee(const UnitNormFrame& frame, double eps = 1e-9,
                       long max_iterations = 2000000);

/// Monte Carlo estimate of the relative area of a spherical cap of the
/// given geodesic radius in S^{n-1}, with std::mt19937_64 +
/// std::normal_distribution (not the library RNG).
double mc_cap_area(int n, double radius, std::uint64_t samples, std::uint64_t seed);

/// Minimax coherence upper bound from a Fibonacci spiral grid on S^2
/// (n = 3 only): min over grid directions of max_i |<d, phi_i>|.
double grid_minimax_s2(const UnitNormFrame& frame, long grid_points);

}  // namespace scalekit::testing
