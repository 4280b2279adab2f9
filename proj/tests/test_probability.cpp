// SPDX-License-Identifier: MIT
/// Spherical-cap areas, analytic probability bounds, the exact planar
/// formula, and Monte Carlo estimation.
#include <doctest.h>

#include <cmath>
#include <string>
#include <utility>

#include "oracles.hpp"
#include "scalekit/error.hpp"
#include "scalekit/probability.hpp"

using namespace scalekit;

TEST_CASE("cap areas: closed forms in low dimensions") {
  // n = 2: the "cap" is an arc, area r / pi.
  for (double r : {0.1, M_PI / 4.0, 1.5, 3.0})
    CHECK(prob::cap_relative_area(2, r) == doctest::Approx(r / M_PI).epsilon(1e-12));
  // n = 3: (1 - cos r) / 2.
  for (double r : {0.2, 0.9553166181245093, 2.5})
    CHECK(prob::cap_relative_area(3, r) ==
          doctest::Approx(0.5 * (1.0 - std::cos(r))).epsilon(1e-12));
  // n = 4: (r - sin r cos r) / pi.
  for (double r : {0.3, 1.0, 2.0})
    CHECK(prob::cap_relative_area(4, r) ==
          doctest::Approx((r - std::sin(r) * std::cos(r)) / M_PI).epsilon(1e-12));
}

TEST_CASE("cap areas: a hemisphere is exactly half in every dimension") {
  for (int n = 2; n <= 16; ++n)
    CHECK(std::fabs(prob::cap_relative_area(n, M_PI / 2.0) - 0.5) < 1e-12);
}

TEST_CASE("cap areas: complementarity and monotonicity") {
  for (int n : {2, 3, 5, 8}) {
    CHECK(prob::cap_relative_area(n, 1.0) + prob::cap_relative_area(n, M_PI - 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    double prev = 0.0;
    for (double r = 0.2; r < M_PI; r += 0.2) {
      const double area = prob::cap_relative_area(n, r);
      CHECK(area > prev);
      prev = area;
    }
  }
}

TEST_CASE("cap area in R^4 agrees with a Monte Carlo oracle") {
  const double area = prob::cap_relative_area(4, 1.0);
  const long samples = 2000000;
  const double mc = testing::mc_cap_area(4, 1.0, samples, 1234);
  const double sigma = std::sqrt(area * (1.0 - area) / static_cast<double>(samples));
  CHECK(std::fabs(mc - area) < 4.0 * sigma);
}

TEST_CASE("cap helpers validate their domains") {
  try {
    prob::cap_relative_area(1, 0.5);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::domain_error);
  }
  for (double r : {0.0, M_PI, -0.3}) {
    try {
      prob::cap_relative_area(3, r);
      FAIL("expected DomainError for radius " << r);
    } catch (const Error& e) {
      CHECK(e.code() == errc::domain_error);
    }
  }
  CHECK_THROWS_AS(prob::cap_geometry(1), Error);
  CHECK_THROWS_AS(prob::covering_bound(0), Error);
  CHECK_THROWS_AS(prob::exact_prob_2d(1), Error);
}

TEST_CASE("cap_geometry ties the pieces together") {
  for (int n : {2, 3, 4, 6}) {
    const prob::CapGeometry g = prob::cap_geometry(n);
    CHECK(g.n == n);
    CHECK(g.a == doctest::Approx(std::acos(1.0 / std::sqrt(double(n)))).epsilon(1e-14));
    CHECK(g.alpha ==
          doctest::Approx(0.5 * std::acos(std::sqrt((n - 1.0) / n))).epsilon(1e-14));
    CHECK(g.area_a == doctest::Approx(prob::cap_relative_area(n, g.a)).epsilon(1e-13));
    CHECK(g.area_alpha == doctest::Approx(prob::cap_relative_area(n, g.alpha)).epsilon(1e-13));
    CHECK(g.covering_bound == doctest::Approx(prob::covering_bound(n)).epsilon(1e-13));
  }
  // The planar covering bound has a known closed value.
  CHECK(prob::covering_bound(2) == doctest::Approx(200.0).epsilon(1e-9));
}

TEST_CASE("exact planar probabilities: 1 - m 2^{1-m}") {
  CHECK(prob::exact_prob_2d(2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(prob::exact_prob_2d(3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(prob::exact_prob_2d(4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(prob::exact_prob_2d(5) == doctest::Approx(0.6875).epsilon(1e-15));
  CHECK(prob::exact_prob_2d(6) == doctest::Approx(0.8125).epsilon(1e-15));
}

TEST_CASE("prob_bounds: degenerate regime and planar anchor") {
  // Below m = n(n+1)/2 the probability is exactly zero.
  const std::pair<double, double> zero = prob::prob_bounds(5, 3);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);

  // At (3, 2) the upper bound equals the exact value 1/4.
  const std::pair<double, double> planar = prob::prob_bounds(3, 2);
  CHECK(planar.second == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(planar.first >= 0.0);
  CHECK(planar.first <= prob::exact_prob_2d(3));

  // Many planar vectors: the lower bound climbs toward one.
  const std::pair<double, double> many = prob::prob_bounds(200, 2);
  CHECK(many.first > 0.99);
  CHECK(many.first <= 1.0);
}

TEST_CASE("monte carlo matches the exact planar value at (4, 2)") {
  const prob::ProbEstimate e = prob::monte_carlo_prob(4, 2, 100000, 1e-6, 11);
  CHECK(e.m == 4);
  CHECK(e.n == 2);
  CHECK(e.trials == 100000);
  CHECK(e.estimate == doctest::Approx(double(e.hits) / 100000.0).epsilon(1e-15));
  const double sigma = std::sqrt(0.5 * 0.5 / 100000.0);
  CHECK(std::fabs(e.estimate - 0.5) < 3.0 * sigma);
  CHECK(e.std_error ==
        doctest::Approx(std::sqrt(e.estimate * (1.0 - e.estimate) / 100000.0)).epsilon(1e-12));
}

TEST_CASE("monte carlo sees the impossible regime: (5, 3) never scales") {
  const prob::ProbEstimate e = prob::monte_carlo_prob(5, 3, 3000, 1e-6, 5);
  CHECK(e.hits == 0);
  CHECK(e.estimate == 0.0);
  CHECK(e.lower_bound == 0.0);
  CHECK(e.upper_bound == 0.0);
}

TEST_CASE("monte carlo estimate lands inside the analytic envelope for (7, 3)") {
  const prob::ProbEstimate e = prob::monte_carlo_prob(7, 3, 20000, 1e-6, 77);
  const double sigma = std::max(e.std_error, 1e-6);
  CHECK(e.estimate >= e.lower_bound - 3.0 * sigma);
  CHECK(e.estimate <= e.upper_bound + 3.0 * sigma);
  const std::pair<double, double> bounds = prob::prob_bounds(7, 3);
  CHECK(e.lower_bound == doctest::Approx(bounds.first).epsilon(1e-14));
  CHECK(e.upper_bound == doctest::Approx(bounds.second).epsilon(1e-14));
}

TEST_CASE("monte carlo probability grows with m") {
  // Statistical but very wide margins: p(m=3) = 1/4 vs p(m=6) = 13/16.
  const prob::ProbEstimate lo = prob::monte_carlo_prob(3, 2, 20000, 1e-6, 21);
  const prob::ProbEstimate hi = prob::monte_carlo_prob(6, 2, 20000, 1e-6, 22);
  CHECK(lo.estimate + 0.3 < hi.estimate);
}

TEST_CASE("monte carlo is deterministic in the seed") {
  const prob::ProbEstimate a = prob::monte_carlo_prob(20, 4, 400, 1e-6, 4242);
  const prob::ProbEstimate b = prob::monte_carlo_prob(20, 4, 400, 1e-6, 4242);
  CHECK(a.hits == b.hits);
  CHECK(a.estimate == b.estimate);
  // Around 60% of (20, 4) frames scale; the estimate should be in that band.
  CHECK(a.estimate > 0.4);
  CHECK(a.estimate < 0.8);
}

TEST_CASE("monte carlo rejects an empty run") {
  try {
    prob::monte_carlo_prob(4, 2, 0, 1e-6, 1);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::domain_error);
  }
}

TEST_CASE("estimate serialization") {
  const prob::ProbEstimate e = prob::monte_carlo_prob(4, 2, 500, 1e-6, 9);
  const std::string json = prob::estimate_to_json(e);
  CHECK(json.find("\"m\": 4") != std::string::npos);
  CHECK(json.find("\"estimate\"") != std::string::npos);
  CHECK(json.find("\"stderr\"") != std::string::npos);
  CHECK(json.find("\"seed\": 9") != std::string::npos);

  const std::string csv = prob::estimates_to_csv({e, e});
  CHECK(csv.rfind("m,n,trials,hits,estimate,stderr,lower,upper\n", 0) == 0);
  int newlines = 0;
  for (char c : csv) newlines += (c == '\n');
  CHECK(newlines == 3);
}
