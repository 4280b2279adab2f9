// SPDX-License-Identifier: MIT
/// \file probability.cpp
/// \brief Cap areas, analytic envelopes, and Monte Carlo estimation.

#include "scalekit/probability.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "scalekit/conedist.hpp"
#include "scalekit/error.hpp"
#include "scalekit/frame.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/parallel.hpp"
#include "scalekit/rng.hpp"
#include "scalekit/scalemeasures.hpp"

namespace scalekit::prob {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Adaptive Simpson quadrature of f on [lo, hi] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(const F& f, double lo, double hi, double whole, double flo, double fmid,
                        double fhi, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
  const double flm = f(lmid), frm = f(rmid);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, lo, mid, left, flo, flm, fmid, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, mid, hi, right, fmid, frm, fhi, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double lo, double hi, double tol) {
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return adaptive_simpson(f, lo, hi, whole, flo, fmid, fhi, tol, 48);
}

}  // namespace

double cap_relative_area(int n, double radius_rad) {
  if (n < 2) raise(errc::domain_error, "cap_relative_area requires ambient dimension n >= 2");
  if (!(radius_rad > 0.0) || !(radius_rad < kPi))
    raise(errc::domain_error, "cap radius must lie in (0, pi)");
  const auto f = [n](double t) { return std::pow(std::sin(t), n - 2); };
  // Split at the radius so the ratio's numerator is computed directly; the
  // integrand is <= 1 on [0, pi], so absolute tolerance ~ relative here.
  const double head = integrate(f, 0.0, radius_rad, 1e-13);
  const double tail = integrate(f, radius_rad, kPi, 1e-13);
  return head / (head + tail);
}

CapGeometry cap_geometry(int n) {
  if (n < 2) raise(errc::domain_error, "cap geometry requires n >= 2");
  CapGeometry g;
  g.n = n;
  g.a = std::acos(1.0 / std::sqrt(static_cast<double>(n)));
  g.alpha = 0.5 * std::acos(std::sqrt((n - 1.0) / n));
  g.area_a = cap_relative_area(n, g.a);
  g.area_alpha = cap_relative_area(n, g.alpha);
  g.covering_bound = covering_bound(n);
  return g;
}

double covering_bound(int n) {
  if (n < 2) raise(errc::domain_error, "covering_bound requires n >= 2");
  const double a = std::acos(1.0 / std::sqrt(static_cast<double>(n)));
  const double area = cap_relative_area(n, a);
  return 3.0 * n + 2.0 +
         std::sqrt(static_cast<double>(n)) * (n + 1.0) * std::cos(a) / (area * area) *
             std::pow(1.0 / (2.0 * area), n);
}

double exact_prob_2d(int m) {
  if (m < 2) raise(errc::domain_error, "exact_prob_2d requires m >= 2");
  return 1.0 - m * std::pow(2.0, -(m - 1.0));
}

std::pair<double, double> prob_bounds(int m, int n) {
  if (m < n * (n + 1) / 2) return {0.0, 0.0};
  const CapGeometry g = cap_geometry(n);
  const double lower =
      std::max(0.0, 1.0 - g.covering_bound * std::pow(1.0 - g.area_alpha, m));
  const double upper = 1.0 - std::pow(1.0 - g.area_a, m - n);
  return {lower, upper};
}

ProbEstimate monte_carlo_prob(int m, int n, std::uint64_t trials, double tol,
                              std::uint64_t seed) {
  if (trials < 1) raise(errc::domain_error, "monte_carlo_prob requires at least one trial");
  std::atomic<std::uint64_t> hits{0};
  parallel_for(trials, [&](std::size_t t) {
    const UnitNormFrame f = random_unit_frame(m, n, derive_seed(seed, t));
    bool scalable;
    if (n == 2) {
      scalable = measures::is_scalable_2d_exact(f);
    } else {
      scalable = cone::solve_cone_projection(f).distance <= tol;
    }
    if (scalable) hits.fetch_add(1, std::memory_order_relaxed);
  });

  ProbEstimate e;
  e.m = m;
  e.n = n;
  e.trials = trials;
  e.hits = hits.load();
  e.estimate = static_cast<double>(e.hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  const auto bounds = prob_bounds(m, n);
  e.lower_bound = bounds.first;
  e.upper_bound = bounds.second;
  e.tol = tol;
  e.seed = seed;
  return e;
}

std::string estimate_to_json(const ProbEstimate& e) {
  std::string out = "{";
  out += "\"m\": " + std::to_string(e.m);
  out += ", \"n\": " + std::to_string(e.n);
  out += ", \"trials\": " + std::to_string(e.trials);
  out += ", \"hits\": " + std::to_string(e.hits);
  out += ", \"estimate\": " + io::fmt17(e.estimate);
  out += ", \"stderr\": " + io::fmt17(e.std_error);
  out += ", \"lower_bound\": " + io::fmt17(e.lower_bound);
  out += ", \"upper_bound\": " + io::fmt17(e.upper_bound);
  out += ", \"tol\": " + io::fmt17(e.tol);
  out += ", \"seed\": " + std::to_string(e.seed);
  out += "}\n";
  return out;
}

std::string estimates_to_csv(const std::vector<ProbEstimate>& rows) {
  std::string out = "m,n,trials,hits,estimate,stderr,lower,upper\n";
  for (const ProbEstimate& e : rows) {
    out += std::to_string(e.m) + "," + std::to_string(e.n) + "," + std::to_string(e.trials) +
           "," + std::to_string(e.hits) + "," + io::fmt17(e.estimate) + "," +
           io::fmt17(e.std_error) + "," + io::fmt17(e.lower_bound) + "," +
           io::fmt17(e.upper_bound) + "\n";
  }
  return out;
}

}  // namespace scalekit::prob
