// SPDX-License-Identifier: MIT
/// \file linalg.cpp
/// \brief Dense helpers: Jacobi eigensolver, Cholesky, pivoted QR.

#include "scalekit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scalekit/error.hpp"
#include "scalekit/kernels.hpp"

namespace scalekit::la {

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.rows, b.cols);
  const Mat bt = transpose(b);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      c(i, j) = kernels::dot(a.row(i), bt.row(j), static_cast<std::size_t>(a.cols));
  return c;
}

double fro_norm(const Mat& a) {
  return std::sqrt(kernels::nrm2sq(a.data.data(), a.data.size()));
}

double fro_dist_identity(const Mat& a) {
  double acc = 0.0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const double d = a(i, j) - (i == j ? 1.0 : 0.0);
      acc += d * d;
    }
  return std::sqrt(acc);
}

void jacobi_eigh(const Mat& s, Vec& evals, Mat& evecs) {
  const int n = s.rows;
  Mat a = s;
  Mat v = Mat::identity(n);

  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
  const double total = kernels::nrm2sq(a.data.data(), a.data.size());
  const double stop = 1e-28 * std::max(total, 1e-300);

  for (int sweep = 0; sweep < 100 && off > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        // Stable tangent of the rotation angle.
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
    off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x) < a(y, y); });
  evals.assign(n, 0.0);
  evecs = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    evals[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) evecs(i, j) = v(i, order[j]);
  }
}

bool cholesky(const Mat& s, Mat& lower) {
  const int n = s.rows;
  lower = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = s(i, j) - kernels::dot(lower.row(i), lower.row(j), static_cast<std::size_t>(j));
      if (i == j) {
        if (!(acc > 0.0)) return false;
        lower(i, i) = std::sqrt(acc);
      } else {
        lower(i, j) = acc / lower(j, j);
      }
    }
  }
  return true;
}

Mat spd_inverse(const Mat& s) {
  const int n = s.rows;
  Mat l;
  if (!cholesky(s, l)) raise(errc::not_spd, "matrix is not positive definite");
  // Invert L in place (forward substitution column by column), then
  // assemble inv = L^{-T} L^{-1}.
  Mat linv(n, n);
  for (int j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double acc = 0.0;
      for (int k = j; k < i; ++k) acc += l(i, k) * linv(k, j);
      linv(i, j) = -acc / l(i, i);
    }
  }
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int k = i; k < n; ++k) acc += linv(k, i) * linv(k, j);
      inv(i, j) = acc;
      inv(j, i) = acc;
    }
  return inv;
}

double spd_logdet(const Mat& s) {
  Mat l;
  if (!cholesky(s, l)) raise(errc::not_spd, "matrix is not positive definite");
  double acc = 0.0;
  for (int i = 0; i < s.rows; ++i) acc += std::log(l(i, i));
  return 2.0 * acc;
}

Cpqr cpqr(const Mat& a, double rtol) {
  const int r = a.rows, c = a.cols;
  const int steps = std::min(r, c);
  Cpqr f;
  f.qr = a;
  f.tau.assign(steps, 0.0);
  f.perm.resize(c);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  Mat& qr = f.qr;

  for (int k = 0; k < steps; ++k) {
    // Pivot: column with the largest remaining norm (recomputed exactly;
    // desk-scale sizes make the O(rc) rescan cheap and cancellation-free).
    int piv = k;
    double best = -1.0;
    for (int j = k; j < c; ++j) {
      double nrm = 0.0;
      for (int i = k; i < r; ++i) nrm += qr(i, j) * qr(i, j);
      if (nrm > best) {
        best = nrm;
        piv = j;
      }
    }
    if (piv != k) {
      for (int i = 0; i < r; ++i) std::swap(qr(i, k), qr(i, piv));
      std::swap(f.perm[k], f.perm[piv]);
    }

    // Householder reflector for column k.
    double alpha = 0.0;
    for (int i = k; i < r; ++i) alpha += qr(i, k) * qr(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) {
      f.tau[k] = 0.0;
      continue;
    }
    if (qr(k, k) > 0.0) alpha = -alpha;
    const double vkk = qr(k, k) - alpha;
    for (int i = k + 1; i < r; ++i) qr(i, k) /= vkk;
    f.tau[k] = -vkk / alpha;
    qr(k, k) = alpha;

    // Apply (I - tau v v^T) to the trailing columns; v = (1, qr(k+1..,k)).
    for (int j = k + 1; j < c; ++j) {
      double w = qr(k, j);
      for (int i = k + 1; i < r; ++i) w += qr(i, k) * qr(i, j);
      w *= f.tau[k];
      qr(k, j) -= w;
      for (int i = k + 1; i < r; ++i) qr(i, j) -= w * qr(i, k);
    }
  }

  const double head = std::abs(qr(0, 0));
  f.rank = 0;
  for (int k = 0; k < steps; ++k) {
    if (std::abs(qr(k, k)) > rtol * head) ++f.rank;
    else break;
  }
  return f;
}

Vec cpqr_solve(const Cpqr& f, Vec b) {
  const int r = f.qr.rows, c = f.qr.cols;
  const int steps = static_cast<int>(f.tau.size());
  // b <- Q^T b.
  for (int k = 0; k < steps; ++k) {
    if (f.tau[k] == 0.0) continue;
    double w = b[k];
    for (int i = k + 1; i < r; ++i) w += f.qr(i, k) * b[i];
    w *= f.tau[k];
    b[k] -= w;
    for (int i = k + 1; i < r; ++i) b[i] -= w * f.qr(i, k);
  }
  // Back-substitute the leading rank x rank triangle.
  Vec y(f.rank, 0.0);
  for (int i = f.rank - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < f.rank; ++j) acc -= f.qr(i, j) * y[j];
    y[i] = acc / f.qr(i, i);
  }
  Vec x(c, 0.0);
  for (int i = 0; i < f.rank; ++i) x[f.perm[i]] = y[i];
  return x;
}

Mat random_orthogonal(int n, Rng& rng) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  // Modified Gram-Schmidt with R_ii > 0 gives the Haar distribution for
  // Gaussian input (up to the usual QR sign convention).
  Mat q(n, n);
  for (int j = 0; j < n; ++j) {
    Vec col(n);
    for (int i = 0; i < n; ++i) col[i] = g(i, j);
    for (int k = 0; k < j; ++k) {
      double proj = 0.0;
      for (int i = 0; i < n; ++i) proj += q(i, k) * col[i];
      for (int i = 0; i < n; ++i) col[i] -= proj * q(i, k);
    }
    // Re-orthogonalize once; cheap insurance at these sizes.
    for (int k = 0; k < j; ++k) {
      double proj = 0.0;
      for (int i = 0; i < n; ++i) proj += q(i, k) * col[i];
      for (int i = 0; i < n; ++i) col[i] -= proj * q(i, k);
    }
    double nrm = std::sqrt(kernels::nrm2sq(col.data(), col.size()));
    for (int i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
  }
  return q;
}

}  // namespace scalekit::la
