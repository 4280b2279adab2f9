// SPDX-License-Identifier: MIT
/// \file conedist.cpp
/// \brief Lawson-Hanson NNLS and the cone projection built on it.

#include "scalekit/conedist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scalekit/kernels.hpp"
#include "scalekit/linalg.hpp"

namespace scalekit::cone {

Mat rankone_design(const Mat& vectors_t) {
  const int m = vectors_t.rows, n = vectors_t.cols;
  const double root2 = std::sqrt(2.0);
  Mat a(svec_dim(n), m);
  for (int j = 0; j < m; ++j) {
    const double* v = vectors_t.row(j);
    int s = 0;
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k, ++s) a(s, j) = (i == k) ? v[i] * v[i] : root2 * v[i] * v[k];
  }
  return a;
}

Vec svec_identity(int n) {
  Vec b(svec_dim(n), 0.0);
  int s = 0;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k, ++s)
      if (i == k) b[s] = 1.0;
  return b;
}

NnlsResult nnls(const Mat& a, const Vec& b, double tol, int max_iterations) {
  const int rows = a.rows, m = a.cols;
  // Entering threshold tol/2 on w = a^T r keeps the final gradient
  // 2 a^T (a x - b) = -2 w within -tol on the inactive set.
  const double enter_tol = 0.5 * tol;

  Vec x(m, 0.0);
  Vec r = b;  // residual b - a x
  std::vector<char> in_p(m, 0);
  std::vector<int> p;  // passive (support) set, insertion-ordered
  std::vector<char> banned(m, 0);
  int iterations = 0;

  auto residual_refresh = [&]() {
    r = b;
    for (int j : p)
      if (x[j] != 0.0)
        for (int i = 0; i < rows; ++i) r[i] -= x[j] * a(i, j);
  };

  auto solve_subproblem = [&]() {
    // Least squares on the current support via column-pivoted QR.
    Mat ap(rows, static_cast<int>(p.size()));
    for (int idx = 0; idx < static_cast<int>(p.size()); ++idx)
      for (int i = 0; i < rows; ++i) ap(i, idx) = a(i, p[idx]);
    la::Cpqr f = la::cpqr(ap, 1e-13);
    return la::cpqr_solve(f, b);
  };

  while (true) {
    // Dual pick: the inactive column with the largest positive w.
    int enter = -1;
    double wbest = enter_tol;
    for (int j = 0; j < m; ++j) {
      if (in_p[j] || banned[j]) continue;
      double w = 0.0;
      for (int i = 0; i < rows; ++i) w += a(i, j) * r[i];
      if (w > wbest) {
        wbest = w;
        enter = j;
      }
    }
    if (enter < 0) break;  // KKT satisfied (or only banned candidates remain)

    if (++iterations > max_iterations)
      raise(errc::max_iterations,
            "nnls exceeded its iteration budget of " + std::to_string(max_iterations));

    in_p[enter] = 1;
    p.push_back(enter);

    // Inner loop: restore feasibility of the unconstrained subproblem.
    // z[idx] below pairs with column p[idx] (subproblem coordinates).
    while (!p.empty()) {
      const Vec z = solve_subproblem();
      double zmin = std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < p.size(); ++idx) zmin = std::min(zmin, z[idx]);
      if (zmin > 0.0) {
        for (std::size_t idx = 0; idx < p.size(); ++idx) x[p[idx]] = z[idx];
        break;
      }
      // Step toward z until the first coordinate hits zero.
      double alpha = 1.0;
      for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (z[idx] > 0.0) continue;
        const double denom = x[p[idx]] - z[idx];
        const double step = denom > 0.0 ? x[p[idx]] / denom : 0.0;
        alpha = std::min(alpha, step);
      }
      for (std::size_t idx = 0; idx < p.size(); ++idx)
        x[p[idx]] += alpha * (z[idx] - x[p[idx]]);
      // Drop everything pinned at (numerical) zero.
      std::vector<int> keep;
      for (std::size_t idx = 0; idx < p.size(); ++idx) {
        const int j = p[idx];
        if (z[idx] <= 0.0 && x[j] <= 1e-14) {
          x[j] = 0.0;
          in_p[j] = 0;
        } else {
          keep.push_back(j);
        }
      }
      p.swap(keep);
    }

    if (!in_p[enter]) {
      // The candidate was ejected by the anti-negativity steps (a degenerate,
      // round-off-level entry); ban it so the outer loop cannot spin on it.
      // Bans are lifted as soon as any candidate enters for good.
      banned[enter] = 1;
    } else {
      std::fill(banned.begin(), banned.end(), 0);
    }
    residual_refresh();
  }

  residual_refresh();
  NnlsResult out;
  out.x = std::move(x);
  out.residual_norm = std::sqrt(kernels::nrm2sq(r.data(), r.size()));
  out.iterations = iterations;
  return out;
}

ConeFit solve_cone_projection(const UnitNormFrame& frame, double tol, int max_iterations) {
  const int m = frame.m(), n = frame.n();
  if (max_iterations <= 0) max_iterations = 50 * m;
  const Mat a = rankone_design(frame.columns_t());
  const Vec b = svec_identity(n);
  NnlsResult sol = nnls(a, b, tol, max_iterations);

  ConeFit fit;
  fit.weights = std::move(sol.x);
  fit.distance = sol.residual_norm;  // svec is isometric, so this is g(c)^(1/2)
  fit.iterations = sol.iterations;
  fit.tol = tol;
  const Mat s = weighted_frame_operator(frame, fit.weights);
  fit.residual_matrix_norm_check = la::fro_dist_identity(s);
  return fit;
}

double objective(const UnitNormFrame& frame, const Vec& weights) {
  const int m = frame.m();
  if (static_cast<int>(weights.size()) != m)
    raise(errc::dimension_error, "weight vector length must equal the number of columns");
  for (double w : weights)
    if (!(w >= 0.0)) raise(errc::negative_weight, "objective requires non-negative weights");
  const GramSquared g = squared_gram(frame);
  const double quad = kernels::quad(g.f.data.data(), weights.data(), weights.size());
  const double lin = kernels::sum(weights.data(), weights.size());
  return quad - 2.0 * lin + frame.n();
}

double potential_upper_bound(const UnitNormFrame& frame) {
  const double m = frame.m(), n = frame.n();
  return std::sqrt(n - m * m / frame_potential(frame));
}

}  // namespace scalekit::cone
