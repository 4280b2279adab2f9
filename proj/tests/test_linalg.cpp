// SPDX-License-Identifier: MIT
/// Dense helpers: Jacobi eigensolver, Cholesky, column-pivoted QR.
#include <doctest.h>

#include <cmath>
#include <vector>

#include "scalekit/error.hpp"
#include "scalekit/linalg.hpp"
#include "scalekit/matrix.hpp"
#include "scalekit/rng.hpp"

using namespace scalekit;

namespace {

Mat random_spd(int n, Rng& rng, double shift) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Mat s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += g(k, i) * g(k, j);
      s(i, j) = acc + (i == j ? shift : 0.0);
    }
  return s;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double worst = 0.0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST_CASE("jacobi_eigh reconstructs the matrix with orthonormal eigenvectors") {
  Rng rng(42);
  for (int n : {1, 2, 3, 5, 8, 12}) {
    const Mat s = random_spd(n, rng, 0.1);
    Vec evals;
    Mat v;
    la::jacobi_eigh(s, evals, v);

    for (int j = 0; j + 1 < n; ++j) CHECK(evals[j] <= evals[j + 1]);  // ascending

    // V^T V = I.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double ip = 0.0;
        for (int i = 0; i < n; ++i) ip += v(i, a) * v(i, b);
        CHECK(std::fabs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
      }

    // V diag(evals) V^T = S.
    Mat rec(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += v(i, k) * evals[k] * v(j, k);
        rec(i, j) = acc;
      }
    CHECK(max_abs_diff(rec, s) < 1e-10 * (1.0 + la::fro_norm(s)));
  }
}

TEST_CASE("jacobi_eigh on a diagonal matrix returns it sorted") {
  Mat d(3, 3);
  d(0, 0) = 5.0;
  d(1, 1) = -1.0;
  d(2, 2) = 2.0;
  Vec evals;
  Mat v;
  la::jacobi_eigh(d, evals, v);
  CHECK(evals[0] == doctest::Approx(-1.0));
  CHECK(evals[1] == doctest::Approx(2.0));
  CHECK(evals[2] == doctest::Approx(5.0));
}

TEST_CASE("cholesky and spd_inverse round-trip") {
  Rng rng(7);
  for (int n : {1, 2, 4, 9}) {
    const Mat s = random_spd(n, rng, 0.5);
    Mat l;
    REQUIRE(la::cholesky(s, l));
    // L L^T = S (only the lower triangle of l is filled).
    Mat rec(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k <= std::min(i, j); ++k) acc += l(i, k) * l(j, k);
        rec(i, j) = acc;
      }
    CHECK(max_abs_diff(rec, s) < 1e-11 * (1.0 + la::fro_norm(s)));

    const Mat inv = la::spd_inverse(s);
    const Mat prod = la::matmul(inv, s);
    CHECK(la::fro_dist_identity(prod) < 1e-9);
  }
}

TEST_CASE("cholesky rejects indefinite input") {
  Mat s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = s(1, 0) = 2.0;
  s(1, 1) = 1.0;  // eigenvalues 3 and -1
  Mat l;
  CHECK_FALSE(la::cholesky(s, l));
  CHECK_THROWS_AS(la::spd_inverse(s), Error);
}

TEST_CASE("spd_logdet matches the 2x2 closed form") {
  Mat s(2, 2);
  s(0, 0) = 3.0;
  s(0, 1) = s(1, 0) = 1.0;
  s(1, 1) = 2.0;
  CHECK(la::spd_logdet(s) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
}

TEST_CASE("cpqr solves well-conditioned least squares") {
  Rng rng(99);
  const int rows = 9, cols = 4;
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.normal();
  Vec x_true = {1.0, -2.0, 0.5, 3.0};
  Vec b(rows, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b[i] += a(i, j) * x_true[j];

  la::Cpqr f = la::cpqr(a, 1e-13);
  CHECK(f.rank == cols);
  const Vec x = la::cpqr_solve(f, b);
  for (int j = 0; j < cols; ++j) CHECK(x[j] == doctest::Approx(x_true[j]).epsilon(1e-10));
}

TEST_CASE("cpqr detects constructed rank deficiency and returns a basic solution") {
  // Third column = first + second: rank 2 out of 3.
  Mat a(5, 3);
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    a(i, 0) = rng.normal();
    a(i, 1) = rng.normal();
    a(i, 2) = a(i, 0) + a(i, 1);
  }
  la::Cpqr f = la::cpqr(a, 1e-12);
  CHECK(f.rank == 2);

  Vec b(5, 0.0);
  for (int i = 0; i < 5; ++i) b[i] = 2.0 * a(i, 0) + 1.0 * a(i, 1);
  const Vec x = la::cpqr_solve(f, b);
  // Basic solution: only rank-many nonzeros, residual still zero.
  int nonzeros = 0;
  for (double v : x)
    if (v != 0.0) ++nonzeros;
  CHECK(nonzeros <= 2);
  for (int i = 0; i < 5; ++i) {
    double ax = 0.0;
    for (int j = 0; j < 3; ++j) ax += a(i, j) * x[j];
    CHECK(ax == doctest::Approx(b[i]).epsilon(1e-10));
  }
}

TEST_CASE("random_orthogonal is orthonormal and seed-deterministic") {
  for (int n : {1, 2, 3, 6, 10}) {
    Rng rng(2024);
    const Mat q = la::random_orthogonal(n, rng);
    Mat qtq(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double ip = 0.0;
        for (int i = 0; i < n; ++i) ip += q(i, a) * q(i, b);
        qtq(a, b) = ip;
      }
    CHECK(la::fro_dist_identity(qtq) < 1e-12);

    Rng rng2(2024);
    const Mat q2 = la::random_orthogonal(n, rng2);
    CHECK(max_abs_diff(q, q2) == 0.0);
  }
}
