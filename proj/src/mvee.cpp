// SPDX-License-Identifier: MIT
/// \file mvee.cpp
/// \brief Wolfe-Atwood design ascent, Caratheodory sparsification, John
///        certificate, and the inverse frame construction.

#include "scalekit/mvee.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "scalekit/conedist.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/kernels.hpp"
#include "scalekit/linalg.hpp"
#include "scalekit/rng.hpp"

namespace scalekit::mvee {

namespace {

/// M(p) = sum p_i phi_i phi_i^T.
Mat design_matrix(const UnitNormFrame& f, const Vec& p) {
  const int n = f.n();
  Mat m(n, n);
  for (int i = 0; i < f.m(); ++i)
    if (p[i] != 0.0) kernels::syr(m.data.data(), p[i], f.col(i), static_cast<std::size_t>(n));
  return m;
}

/// Exact log det gain of the move p -> (1-beta) p + beta e_j, where
/// kappa = phi_j^T M^{-1} phi_j:
///   log det M' = log det M + (n-1) log(1-beta) + log(1 + beta (kappa-1)).
double logdet_gain(int n, double beta, double kappa) {
  return (n - 1) * std::log1p(-beta) + std::log1p(beta * (kappa - 1.0));
}

/// Conic Caratheodory elimination: shrink the support of rho to at most
/// svec_dim(n) indices while preserving sum rho_i phi_i phi_i^T exactly
/// (each pass sends one weight to exact zero along a null direction of the
/// lifted design matrix; unit norms force the null direction to sum to 0,
/// so sum rho is preserved too).
void sparsify_weights(const UnitNormFrame& f, Vec& rho) {
  const int n = f.n();
  const int cap = cone::svec_dim(n);
  const Mat a_full = cone::rankone_design(f.columns_t());
  const int s = a_full.rows;

  for (;;) {
    std::vector<int> support;
    for (int i = 0; i < f.m(); ++i)
      if (rho[i] > 0.0) support.push_back(i);
    const int k = static_cast<int>(support.size());
    if (k <= cap) break;

    Mat aj(s, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < s; ++r) aj(r, c) = a_full(r, support[c]);
    la::Cpqr f_qr = la::cpqr(aj, 1e-12);
    if (f_qr.rank >= k) break;  // columns independent; nothing to eliminate

    // Null vector: express the first non-pivot column in the pivot basis.
    const int dep = f_qr.perm[f_qr.rank];
    Vec rhs(s);
    for (int r = 0; r < s; ++r) rhs[r] = aj(r, dep);
    Mat apiv(s, f_qr.rank);
    for (int c = 0; c < f_qr.rank; ++c)
      for (int r = 0; r < s; ++r) apiv(r, c) = aj(r, f_qr.perm[c]);
    const Vec y = la::cpqr_solve(la::cpqr(apiv, 1e-12), rhs);

    Vec z(k, 0.0);
    for (int c = 0; c < f_qr.rank; ++c) z[f_qr.perm[c]] = y[c];
    z[dep] = -1.0;

    // Pick the sign/step that zeroes one weight while keeping the rest >= 0.
    double t_pos = std::numeric_limits<double>::infinity();
    double t_neg = std::numeric_limits<double>::infinity();
    int arg_pos = -1, arg_neg = -1;
    for (int c = 0; c < k; ++c) {
      if (z[c] > 0.0 && rho[support[c]] / z[c] < t_pos) {
        t_pos = rho[support[c]] / z[c];
        arg_pos = c;
      }
      if (z[c] < 0.0 && rho[support[c]] / -z[c] < t_neg) {
        t_neg = rho[support[c]] / -z[c];
        arg_neg = c;
      }
    }
    double t;
    int pinned;
    if (arg_pos >= 0 && (arg_neg < 0 || t_pos <= t_neg)) {
      t = t_pos;
      pinned = arg_pos;
    } else if (arg_neg >= 0) {
      t = -t_neg;
      pinned = arg_neg;
    } else {
      break;  // z identically zero (cannot happen for a genuine null vector)
    }
    for (int c = 0; c < k; ++c) {
      rho[support[c]] -= t * z[c];
      if (rho[support[c]] < 0.0) rho[support[c]] = 0.0;
    }
    rho[support[pinned]] = 0.0;
  }
}

}  // namespace

MinimalEllipsoid minimal_ellipsoid(const UnitNormFrame& frame, double eta, long max_iterations,
                                   bool sparsify) {
  const int m = frame.m(), n = frame.n();
  const std::size_t un = static_cast<std::size_t>(n);
  if (max_iterations <= 0)
    max_iterations = std::llround(1e5 * std::log(static_cast<double>(m) / eta));

  Vec p(m, 1.0 / m);
  Mat minv;
  {
    const Mat m0 = design_matrix(frame, p);
    Mat l;
    if (!la::cholesky(m0, l))
      raise(errc::not_a_frame, "design matrix is singular; columns do not span");
    minv = la::spd_inverse(m0);
  }

  Vec kappa(m, 0.0);
  Vec t(n, 0.0);  // scratch: M^{-1} phi_j
  long since_refactor = 0;

  for (long iter = 0;; ++iter) {
    if (iter >= max_iterations)
      raise(errc::max_iterations, "ellipsoid ascent exceeded its iteration budget");

    // kappa_j = phi_j^T M^{-1} phi_j for every column; track the ascent
    // candidate (global max) and the away candidate (support min).
    int j_up = -1, j_dn = -1;
    double k_up = -1.0, k_dn = std::numeric_limits<double>::infinity();
    double k_contact_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      kappa[j] = kernels::quad(minv.data.data(), frame.col(j), un);
      if (kappa[j] > k_up) {
        k_up = kappa[j];
        j_up = j;
      }
      if (p[j] > 0.0 && kappa[j] < k_dn) {
        k_dn = kappa[j];
        j_dn = j;
      }
      if (p[j] > eta && kappa[j] < k_contact_min) k_contact_min = kappa[j];
    }

    const bool upper_ok = k_up <= n * (1.0 + eta);
    const bool lower_ok = k_contact_min >= n * (1.0 - eta);
    if (upper_ok && lower_ok) break;

    // Candidate steps: regular ascent on j_up, away step on j_dn.
    const double beta_up = (k_up - n) / (n * (k_up - 1.0));
    double beta_dn = 0.0;
    if (j_dn >= 0 && p[j_dn] < 1.0) {
      const double clamp = -p[j_dn] / (1.0 - p[j_dn]);
      // For kappa <= 1 the one-dimensional log det has no interior
      // stationary point on the feasible side, so the full removal wins.
      beta_dn = k_dn > 1.0 + 1e-12
                    ? std::max((k_dn - n) / (n * (k_dn - 1.0)), clamp)
                    : clamp;
    }

    int j;
    double beta;
    const double gain_up = j_up >= 0 && beta_up > 0.0 ? logdet_gain(n, beta_up, k_up)
                                                      : -std::numeric_limits<double>::infinity();
    const double gain_dn = j_dn >= 0 && beta_dn < 0.0 ? logdet_gain(n, beta_dn, k_dn)
                                                      : -std::numeric_limits<double>::infinity();
    if (gain_up >= gain_dn) {
      j = j_up;
      beta = beta_up;
    } else {
      j = j_dn;
      beta = beta_dn;
    }
    if (!(beta == beta && std::abs(beta) > 0.0)) {
      // No step can improve the objective: numerically stationary.
      break;
    }

    // Sherman-Morrison update of M^{-1} for M' = (1-beta) M + beta phi phi^T,
    // halving the step if the denominator degenerates (support about to
    // lose rank on a full away removal).
    const double* phi = frame.col(j);
    double denom = 1.0 + beta * (kappa[j] - 1.0);
    while (denom <= 1e-12) {
      beta *= 0.5;
      denom = 1.0 + beta * (kappa[j] - 1.0);
    }

    const bool full_removal = beta < 0.0 && p[j] + beta * (1.0 - p[j]) <= 1e-15;
    for (int i = 0; i < m; ++i) p[i] *= (1.0 - beta);
    p[j] += beta;
    if (full_removal) p[j] = 0.0;

    kernels::gemv(minv.data.data(), un, un, phi, t.data());
    const double scale = 1.0 / (1.0 - beta);
    // M'^{-1} = (M^{-1} - beta/denom * t t^T) / (1 - beta)
    kernels::syr(minv.data.data(), -beta / denom, t.data(), un);
    kernels::scal(scale, minv.data.data(), minv.data.size());

    if (++since_refactor >= 1000) {
      since_refactor = 0;
      // Renormalize p against drift and refactor M^{-1} from scratch.
      const double total = kernels::sum(p.data(), p.size());
      kernels::scal(1.0 / total, p.data(), p.size());
      minv = la::spd_inverse(design_matrix(frame, p));
    }
  }

  // Final exact renormalization and a fresh factorization: the returned
  // quantities come from p directly, not from the incrementally updated
  // inverse.
  const double total = kernels::sum(p.data(), p.size());
  kernels::scal(1.0 / total, p.data(), p.size());

  MinimalEllipsoid e;
  e.eta = eta;
  const Mat mp = design_matrix(frame, p);
  e.x_inv = mp;
  kernels::scal(static_cast<double>(n), e.x_inv.data.data(), e.x_inv.data.size());
  e.x = la::spd_inverse(mp);
  kernels::scal(1.0 / n, e.x.data.data(), e.x.data.size());
  e.rho.assign(m, 0.0);
  for (int i = 0; i < m; ++i) e.rho[i] = n * p[i];

  if (sparsify) sparsify_weights(frame, e.rho);

  Mat evecs;
  la::jacobi_eigh(e.x_inv, e.eigenvalues, evecs);
  double v = 1.0;
  for (double lam : e.eigenvalues) v *= std::sqrt(lam);
  e.volume_ratio = v;

  for (int i = 0; i < m; ++i)
    if (e.rho[i] > n * eta) e.contact_indices.push_back(i);
  return e;
}

CertificateReport john_certificate(const UnitNormFrame& frame, const MinimalEllipsoid& e,
                                   double tol) {
  const int m = frame.m(), n = frame.n();
  const std::size_t un = static_cast<std::size_t>(n);
  CertificateReport r;

  Mat recon = e.x_inv;
  for (int i = 0; i < m; ++i)
    if (e.rho[i] != 0.0) kernels::syr(recon.data.data(), -e.rho[i], frame.col(i), un);
  r.reconstruction_residual = la::fro_norm(recon);

  double worst_violation = 0.0;
  double worst_slack = 0.0;
  for (int i = 0; i < m; ++i) {
    const double q = kernels::quad(e.x.data.data(), frame.col(i), un);
    worst_violation = std::max(worst_violation, q - 1.0);
  }
  for (int i : e.contact_indices) {
    const double q = kernels::quad(e.x.data.data(), frame.col(i), un);
    worst_slack = std::max(worst_slack, std::abs(q - 1.0));
  }
  r.max_containment_violation = std::max(0.0, worst_violation);
  r.max_contact_slack = worst_slack;

  r.reconstruction_ok = r.reconstruction_residual <= tol;
  r.containment_ok = r.max_containment_violation <= tol;
  r.contact_ok = r.max_contact_slack <= tol;
  r.pass = r.reconstruction_ok && r.containment_ok && r.contact_ok;
  return r;
}

UnitNormFrame frame_from_ellipsoid(const Mat& x_inv, int m, std::uint64_t seed) {
  const int n = x_inv.rows;
  if (n < 1 || x_inv.cols != n)
    raise(errc::dimension_error, "x_inv must be a square matrix");
  if (m < n) raise(errc::dimension_error, "need m >= n vectors");

  Mat sym(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (x_inv(i, j) + x_inv(j, i));

  double trace = 0.0;
  for (int i = 0; i < n; ++i) trace += sym(i, i);
  if (std::abs(trace - n) > 1e-10)
    raise(errc::trace_mismatch,
          "trace of x_inv is " + io::fmt17(trace) + ", expected " + std::to_string(n));

  Vec lam;
  Mat q;
  la::jacobi_eigh(sym, lam, q);
  if (lam[0] <= 0.0) raise(errc::not_spd, "x_inv is not positive definite");

  // Random initial orthogonal basis (this is the seed's whole role), then
  // Givens rotations on max/min diagonal pairs of T = W^T Lambda W until
  // T has unit diagonal. Feasible because tr(T) = n is preserved, so the
  // remaining diagonal always straddles 1.
  Rng rng(seed);
  Mat w = la::random_orthogonal(n, rng);
  Mat tmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += w(k, i) * lam[k] * w(k, j);
      tmat(i, j) = acc;
    }

  std::vector<char> fixed(n, 0);
  for (int round = 0; round < n - 1; ++round) {
    int hi = -1, lo = -1;
    for (int i = 0; i < n; ++i) {
      if (fixed[i]) continue;
      if (hi < 0 || tmat(i, i) > tmat(hi, hi)) hi = i;
      if (lo < 0 || tmat(i, i) < tmat(lo, lo)) lo = i;
    }
    if (hi == lo) break;
    const double a = tmat(hi, hi), c = tmat(lo, lo), b = tmat(hi, lo);
    double tt;  // tangent of the rotation angle
    if (std::abs(a - 1.0) <= 1e-13) {
      fixed[hi] = 1;
      continue;
    }
    if (std::abs(c - 1.0) <= 1e-14 && std::abs(b) <= 1e-14) {
      fixed[lo] = 1;
      continue;
    }
    if (std::abs(c - 1.0) <= 1e-14) {
      tt = (1.0 - a) / (2.0 * b);
    } else {
      const double disc = std::sqrt(std::max(0.0, b * b - (a - 1.0) * (c - 1.0)));
      const double t1 = (-b + disc) / (c - 1.0);
      const double t2 = (-b - disc) / (c - 1.0);
      tt = std::abs(t1) <= std::abs(t2) ? t1 : t2;
    }
    const double cth = 1.0 / std::sqrt(1.0 + tt * tt);
    const double sth = tt * cth;

    // Columns hi/lo of W rotate; T = W^T Lambda W updates on both sides.
    for (int k = 0; k < n; ++k) {
      const double wh = w(k, hi), wl = w(k, lo);
      w(k, hi) = cth * wh + sth * wl;
      w(k, lo) = -sth * wh + cth * wl;
    }
    for (int k = 0; k < n; ++k) {
      const double th = tmat(k, hi), tl = tmat(k, lo);
      tmat(k, hi) = cth * th + sth * tl;
      tmat(k, lo) = -sth * th + cth * tl;
    }
    for (int k = 0; k < n; ++k) {
      const double th = tmat(hi, k), tl = tmat(lo, k);
      tmat(hi, k) = cth * th + sth * tl;
      tmat(lo, k) = -sth * th + cth * tl;
    }
    tmat(hi, hi) = 1.0;  // exact by choice of the rotation
    fixed[hi] = 1;
  }

  Mat cols_t(m, n);
  for (int i = 0; i < n; ++i) {
    // phi_i = Q Lambda^{1/2} w_i.
    double* phi = cols_t.row(i);
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += q(r, k) * std::sqrt(lam[k]) * w(k, i);
      phi[r] = acc;
    }
    const double nrm = std::sqrt(kernels::nrm2sq(phi, static_cast<std::size_t>(n)));
    kernels::scal(1.0 / nrm, phi, static_cast<std::size_t>(n));
  }
  for (int i = n; i < m; ++i)
    for (int k = 0; k < n; ++k) cols_t(i, k) = cols_t(0, k);

  return UnitNormFrame::from_valid_rows(std::move(cols_t));
}

std::string ellipsoid_to_json(const MinimalEllipsoid& e) {
  const int n = e.x_inv.rows;
  std::string out = "{\"n\": " + std::to_string(n) + ", \"x_inv\": [";
  for (int i = 0; i < n; ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < n; ++j) {
      if (j) out += ", ";
      out += io::fmt17(e.x_inv(i, j));
    }
    out += "]";
  }
  out += "], \"rho\": [";
  for (std::size_t i = 0; i < e.rho.size(); ++i) {
    if (i) out += ", ";
    out += io::fmt17(e.rho[i]);
  }
  out += "], \"volume_ratio\": " + io::fmt17(e.volume_ratio) +
         ", \"eta\": " + io::fmt17(e.eta) + "}\n";
  return out;
}

Mat read_xinv_json(const std::string& path) {
  const std::string text = io::read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("x_inv");
    if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n)
      raise(errc::parse_error, "x_inv JSON: expected n rows");
    Mat a(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        raise(errc::parse_error, "x_inv JSON: row " + std::to_string(i) + " malformed");
      for (int k = 0; k < n; ++k) a(i, k) = row.at(k).get<double>();
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("x_inv JSON: ") + e.what());
  }
}

}  // namespace scalekit::mvee
