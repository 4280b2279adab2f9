// SPDX-License-Identifier: MIT
#pragma once
/// \file probability.hpp
/// \brief Spherical-cap geometry, analytic bounds on the probability that a
///        random unit-norm frame is scalable, the exact planar formula, and
///        seeded Monte Carlo estimation.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scalekit::prob {

struct CapGeometry {
  int n = 0;                     ///< ambient dimension (caps live on S^{n-1})
  double a = 0.0;                ///< arccos(1/sqrt(n))
  double alpha = 0.0;            ///< (1/2) arccos(sqrt((n-1)/n))
  double area_a = 0.0;           ///< relative cap area at radius a
  double area_alpha = 0.0;       ///< relative cap area at radius alpha
  double covering_bound = 0.0;   ///< upper bound on the covering number
};

struct ProbEstimate {
  int m = 0, n = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;       ///< trials with verdict scalable
  double estimate = 0.0;        ///< hits / trials
  double std_error = 0.0;       ///< sqrt(p(1-p)/trials)
  double lower_bound = 0.0;     ///< analytic envelope (0 when m < n(n+1)/2)
  double upper_bound = 0.0;
  double tol = 0.0;             ///< scalability threshold used for verdicts
  std::uint64_t seed = 0;
};

/// Relative area of the spherical cap {x in S^{n-1} : <x,C> >= cos(radius)}:
/// int_0^r sin^{n-2} / int_0^pi sin^{n-2}, by adaptive quadrature with
/// relative error <= 1e-10. Pre: n >= 2, radius in (0, pi).
/// Errors: DomainError.
double cap_relative_area(int n, double radius_rad);

/// All cap quantities for dimension n. Errors: DomainError (n < 2).
CapGeometry cap_geometry(int n);

/// Upper bound on the number of caps of angular radius a = arccos(1/sqrt(n))
/// needed to cover the sphere, evaluated verbatim from its closed form:
/// 3n + 2 + sqrt(n) (n+1) cos(a) A^{-2} (1/(2A))^n with A the cap area.
/// The bound is loose (n=2 gives 200) and documented as an upper bound only.
double covering_bound(int n);

/// Exact probability that m >= 2 random unit vectors in the plane form a
/// scalable frame: 1 - m / 2^{m-1}. Errors: DomainError (m < 2).
double exact_prob_2d(int m);

/// Analytic envelope (lower, upper) with
///   lower = max(0, 1 - covering_bound * (1 - area_alpha)^m),
///   upper = 1 - (1 - area_a)^{m-n};
/// returns (0, 0) when m < n(n+1)/2 (the probability is exactly zero there).
std::pair<double, double> prob_bounds(int m, int n);

/// Monte Carlo estimate of the probability that a random frame of m unit
/// vectors in R^n is scalable. Verdicts: the exact apex test for n = 2, the
/// cone distance <= tol otherwise. Per-trial seeds are derived from (seed,
/// trial index), so serial and parallel runs agree bit for bit.
/// Errors: propagated.
ProbEstimate monte_carlo_prob(int m, int n, std::uint64_t trials, double tol = 1e-6,
                              std::uint64_t seed = 0);

std::string estimate_to_json(const ProbEstimate& e);

/// CSV with header m,n,trials,hits,estimate,stderr,lower,upper.
std::string estimates_to_csv(const std::vector<ProbEstimate>& rows);

}  // namespace scalekit::prob
