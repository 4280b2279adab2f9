// SPDX-License-Identifier: MIT
/// \file scalemeasures.cpp
/// \brief Verdicts, certificates, distance bounds, scalable approximation,
///        and the minimax-coherence estimator.

#include "scalekit/scalemeasures.hpp"

#include <algorithm>
#include <cmath>

#include "scalekit/conedist.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/kernels.hpp"
#include "scalekit/linalg.hpp"
#include "scalekit/mvee.hpp"
#include "scalekit/rng.hpp"

namespace scalekit::measures {

namespace {

constexpr double kKktTol = 1e-10;
constexpr double kEta = 1e-7;
// Fixed seed for the minimax certificate search inside analyze(): the report
// must be a pure function of the frame.
constexpr std::uint64_t kAnalyzeMinimaxSeed = 0x5ca1ab1eULL;

double relative_error_bound(int k, int n, double d) {
  // sqrt(K n) * (1 - sqrt(n ((1-d)^4 - 4 K d^2) / (n (1-d)^4 - 4 K d^2)))^(1/2),
  // the certified error bound as a function of an upper estimate d of the
  // distance to the scalable set (valid for d < (1/2)(1+sqrt(K))^{-1}).
  const double f = (1.0 - d) * (1.0 - d) * (1.0 - d) * (1.0 - d);
  const double num = n * (f - 4.0 * k * d * d);
  const double den = n * f - 4.0 * k * d * d;
  const double radicand = std::max(0.0, num / den);
  const double inner = std::max(0.0, 1.0 - std::sqrt(radicand));
  return std::sqrt(static_cast<double>(k) * n * inner);
}

}  // namespace

const char* certificate_name(Certificate c) {
  switch (c) {
    case Certificate::ConeZero: return "ConeZero";
    case Certificate::VolumeOne: return "VolumeOne";
    case Certificate::UnitaryMbyN: return "UnitaryMbyN";
    case Certificate::Apex2D: return "Apex2D";
    case Certificate::NecessaryViolated: return "NecessaryViolated";
    case Certificate::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

int k_active(int m, int n) { return std::min(m, n * (n + 1) / 2); }

double vd_lower_envelope(int n, double d) {
  return n * (1.0 - d * d) / (n - d * d);
}

double vd_upper_envelope(int n, double d) {
  return static_cast<double>(n) * (n - 1.0 - d * d) / ((n - 1.0) * (n - d * d));
}

DistanceBounds distance_bounds(int m, int n, double cone_distance, double volume_ratio) {
  const int k = k_active(m, n);
  DistanceBounds b;
  const double v_pow = std::pow(volume_ratio, 2.0 / n);
  b.upper = std::sqrt(std::max(0.0, k * n * (1.0 - v_pow)));
  if (b.upper < 1.0) {
    const double omega = cone_distance + std::sqrt(static_cast<double>(k));
    const double disc = std::max(0.0, omega * omega - cone_distance * cone_distance);
    b.lower = cone_distance / (omega + std::sqrt(disc));
    b.lower_valid = true;
  } else {
    // The lower bound requires distance-to-scalable < 1, which cannot be
    // verified when even the upper bound is >= 1.
    b.lower = 0.0;
    b.lower_valid = false;
  }
  return b;
}

bool is_scalable_2d_exact(const UnitNormFrame& frame) {
  if (frame.n() != 2) raise(errc::dimension_error, "exact apex test requires n = 2");
  const double pi = 3.14159265358979323846;
  std::vector<double> angles(frame.m());
  for (int i = 0; i < frame.m(); ++i) {
    double t = std::atan2(frame.entry(1, i), frame.entry(0, i));
    if (t < 0.0) t += pi;  // lines, not rays: angles live mod pi
    if (t >= pi) t -= pi;
    angles[i] = t;
  }
  std::sort(angles.begin(), angles.end());
  double gap = pi - angles.back() + angles.front();
  for (std::size_t i = 1; i < angles.size(); ++i)
    gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap <= pi / 2.0 + 1e-12;
}

MinimaxEstimate minimax_coherence(const UnitNormFrame& frame, int num_samples, int refine_iters,
                                  std::uint64_t seed) {
  const int m = frame.m(), n = frame.n();
  const std::size_t un = static_cast<std::size_t>(n);
  Rng rng(seed);

  auto coherence = [&](const Vec& d) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(worst, std::abs(kernels::dot(d.data(), frame.col(i), un)));
    return worst;
  };
  auto draw_direction = [&](Vec& d) {
    double nrm2;
    do {
      for (int k = 0; k < n; ++k) d[k] = rng.normal();
      nrm2 = kernels::nrm2sq(d.data(), un);
    } while (nrm2 < 1e-24);
    kernels::scal(1.0 / std::sqrt(nrm2), d.data(), un);
  };

  // Stage 1: uniform sampling; keep the best few starting points.
  constexpr int kStarts = 8;
  std::vector<std::pair<double, Vec>> best;
  Vec d(n);
  for (int s = 0; s < num_samples; ++s) {
    draw_direction(d);
    const double val = coherence(d);
    if (static_cast<int>(best.size()) < kStarts) {
      best.emplace_back(val, d);
      std::sort(best.begin(), best.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    } else if (val < best.back().first) {
      best.back() = {val, d};
      std::sort(best.begin(), best.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }

  Vec champion = best.front().second;
  double champion_val = best.front().first;

  // Stage 2: projected subgradient descent from each start (step ~ 1/k),
  // tracking the best iterate ever visited.
  for (const auto& start : best) {
    Vec cur = start.second;
    for (int it = 1; it <= refine_iters; ++it) {
      // Subgradient of max_i |<d,phi_i>| at the active column.
      int active = 0;
      double worst = -1.0;
      for (int i = 0; i < m; ++i) {
        const double v = std::abs(kernels::dot(cur.data(), frame.col(i), un));
        if (v > worst) {
          worst = v;
          active = i;
        }
      }
      const double sign =
          kernels::dot(cur.data(), frame.col(active), un) >= 0.0 ? 1.0 : -1.0;
      const double step = 0.5 / it;
      Vec next = cur;
      kernels::axpy(-step * sign, frame.col(active), next.data(), un);
      const double nrm2 = kernels::nrm2sq(next.data(), un);
      if (nrm2 < 1e-24) continue;
      kernels::scal(1.0 / std::sqrt(nrm2), next.data(), un);
      cur = next;
      const double val = coherence(cur);
      if (val < champion_val) {
        champion_val = val;
        champion = cur;
      }
    }
  }

  // Stage 3: shrinking-radius random polish around the champion.
  double radius = 0.05;
  Vec probe(n);
  for (int it = 0; it < 256 && radius > 1e-12; ++it) {
    for (int k = 0; k < n; ++k) probe[k] = champion[k] + radius * rng.normal();
    const double nrm2 = kernels::nrm2sq(probe.data(), un);
    if (nrm2 < 1e-24) continue;
    kernels::scal(1.0 / std::sqrt(nrm2), probe.data(), un);
    const double val = coherence(probe);
    if (val < champion_val) {
      champion_val = val;
      champion = probe;
    } else {
      radius *= 0.9;
    }
  }

  MinimaxEstimate est;
  est.direction = champion;
  est.value = coherence(champion);  // recomputed exactly at the reported direction
  est.samples = num_samples;
  est.is_upper_bound = true;
  return est;
}

ScalabilityReport analyze(const UnitNormFrame& frame, double tol) {
  if (!(tol > 0.0) || tol > 1e-4)
    raise(errc::domain_error, "analyze tolerance must lie in (0, 1e-4]");
  const int m = frame.m(), n = frame.n();

  const cone::ConeFit fit = cone::solve_cone_projection(frame, kKktTol);
  const mvee::MinimalEllipsoid ell = mvee::minimal_ellipsoid(frame, kEta);

  ScalabilityReport r;
  r.m = m;
  r.n = n;
  r.cone_distance = fit.distance;
  r.volume_ratio = ell.volume_ratio;
  r.k_active = k_active(m, n);
  r.omega = fit.distance + std::sqrt(static_cast<double>(r.k_active));
  r.tolerances = {tol, kKktTol, kEta};

  const DistanceBounds b = distance_bounds(m, n, fit.distance, ell.volume_ratio);
  r.d_phi_lower = b.lower;
  r.d_phi_upper = b.upper;
  r.d_phi_lower_valid = b.lower_valid;

  const bool cone_ok = fit.distance <= tol;
  const bool vol_ok = ell.volume_ratio >= 1.0 - 10.0 * tol;

  if (n == 2) {
    const bool apex = is_scalable_2d_exact(frame);
    if (!apex) {
      r.scalable = false;
      r.certificate = Certificate::Apex2D;
      return r;
    }
    r.scalable = cone_ok;
    r.certificate = (cone_ok && vol_ok) ? Certificate::ConeZero : Certificate::Undetermined;
    return r;
  }

  if (cone_ok != vol_ok) {
    r.scalable = cone_ok;  // cone projection is the primary criterion
    r.certificate = Certificate::Undetermined;
    return r;
  }
  if (cone_ok) {
    r.scalable = true;
    r.certificate = Certificate::ConeZero;
    return r;
  }

  r.scalable = false;
  if (m == n) {
    // Square frames are scalable iff they are orthogonal matrices.
    Mat gram(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        gram(i, j) = kernels::dot(frame.col(i), frame.col(j), static_cast<std::size_t>(n));
    r.certificate = la::fro_dist_identity(gram) > tol ? Certificate::UnitaryMbyN
                                                      : Certificate::Undetermined;
    return r;
  }
  const MinimaxEstimate mm = minimax_coherence(frame, 10000, 100, kAnalyzeMinimaxSeed);
  r.certificate = mm.value < 1.0 / std::sqrt(static_cast<double>(n)) - 1e-9
                      ? Certificate::NecessaryViolated
                      : Certificate::VolumeOne;
  return r;
}

ApproximationResult approximate_scalable(const UnitNormFrame& frame, double eta) {
  const int m = frame.m(), n = frame.n();
  const mvee::MinimalEllipsoid ell = mvee::minimal_ellipsoid(frame, eta, 0, /*sparsify=*/true);

  // X^{1/2} from the eigendecomposition of X^{-1}.
  Vec lam;
  Mat q;
  la::jacobi_eigh(ell.x_inv, lam, q);
  Mat x_half(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += q(i, k) * q(j, k) / std::sqrt(lam[k]);
      x_half(i, j) = acc;
      x_half(j, i) = acc;
    }
  const double scale = std::pow(ell.volume_ratio, 1.0 / n);

  ApproximationResult res;
  res.approx_frame = Mat(n, m);
  Vec scaled(n);
  double err2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const bool active = ell.rho[i] > 0.0;
    if (active) {
      res.active_set.push_back(i);
      kernels::gemv(x_half.data.data(), n, n, frame.col(i), scaled.data());
      for (int k = 0; k < n; ++k) {
        const double v = scale * scaled[k];
        res.approx_frame(k, i) = v;
        const double dff = frame.entry(k, i) - v;
        err2 += dff * dff;
      }
    } else {
      for (int k = 0; k < n; ++k) res.approx_frame(k, i) = frame.entry(k, i);
    }
  }
  res.frobenius_error = std::sqrt(err2);

  const int k = k_active(m, n);
  const double v_pow = std::pow(ell.volume_ratio, 2.0 / n);
  const double direct = std::sqrt(std::max(0.0, k * n * (1.0 - v_pow)));
  const double hypothesis_cap = 0.5 / (1.0 + std::sqrt(static_cast<double>(k)));
  res.bound = direct < hypothesis_cap ? relative_error_bound(k, n, direct) : direct;
  return res;
}

std::string report_to_json(const ScalabilityReport& r) {
  std::string out = "{";
  out += "\"m\": " + std::to_string(r.m);
  out += ", \"n\": " + std::to_string(r.n);
  out += ", \"scalable\": " + std::string(r.scalable ? "true" : "false");
  out += ", \"certificate\": \"" + std::string(certificate_name(r.certificate)) + "\"";
  out += ", \"cone_distance\": " + io::fmt17(r.cone_distance);
  out += ", \"volume_ratio\": " + io::fmt17(r.volume_ratio);
  out += ", \"d_phi_lower\": " + io::fmt17(r.d_phi_lower);
  out += ", \"d_phi_upper\": " + io::fmt17(r.d_phi_upper);
  out += ", \"d_phi_lower_valid\": " + std::string(r.d_phi_lower_valid ? "true" : "false");
  out += ", \"k_active\": " + std::to_string(r.k_active);
  out += ", \"omega\": " + io::fmt17(r.omega);
  out += ", \"tolerances\": {\"verdict\": " + io::fmt17(r.tolerances.verdict) +
         ", \"kkt\": " + io::fmt17(r.tolerances.kkt) + ", \"eta\": " + io::fmt17(r.tolerances.eta) +
         "}}";
  out += "\n";
  return out;
}

std::string report_to_text(const ScalabilityReport& r) {
  std::string out;
  out += "frame: m=" + std::to_string(r.m) + " n=" + std::to_string(r.n) + "\n";
  out += "scalable: " + std::string(r.scalable ? "yes" : "no") +
         " (certificate: " + certificate_name(r.certificate) + ")\n";
  out += "cone distance D:      " + io::fmt17(r.cone_distance) + "\n";
  out += "volume ratio V:       " + io::fmt17(r.volume_ratio) + "\n";
  out += "distance to scalable: [" + io::fmt17(r.d_phi_lower) + ", " + io::fmt17(r.d_phi_upper) +
         "]" + (r.d_phi_lower_valid ? "" : "  (lower bound hypothesis unverifiable; reported 0)") +
         "\n";
  out += "k_active: " + std::to_string(r.k_active) + "  omega: " + io::fmt17(r.omega) + "\n";
  out += "tolerances: verdict " + io::fmt17(r.tolerances.verdict) + ", kkt " +
         io::fmt17(r.tolerances.kkt) + ", eta " + io::fmt17(r.tolerances.eta) + "\n";
  return out;
}

}  // namespace scalekit::measures
