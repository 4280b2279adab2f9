// SPDX-License-Identifier: MIT
#pragma once
/// \file scalemeasures.hpp
/// \brief Combined scalability report: verdict with certificate, bounds on
///        the distance to the scalable set, the explicit scalable
///        approximation, and the minimax-coherence necessary condition.

#include <cstdint>
#include <string>
#include <vector>

#include "scalekit/frame.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit::measures {

/// How the verdict was certified.
///  - ConeZero: cone projection and ellipsoid volume agree the frame is
///    scalable (D <= tol and V >= 1 - 10 tol).
///  - VolumeOne: non-scalable, certified by V < 1 - 10 tol (the volume
///    characterization); the default non-scalable certificate.
///  - UnitaryMbyN: m = n and the unitarity test ||Phi^T Phi - I||_F > tol
///    certifies non-scalability (square frames are scalable iff unitary).
///  - Apex2D: n = 2 and the exact apex-angle test decided the verdict.
///  - NecessaryViolated: a sampled direction d has max_i |<d,phi_i>| below
///    1/sqrt(n), violating a necessary condition for scalability.
///  - Undetermined: the cone and volume tests disagree beyond tolerance;
///    the verdict follows the (primary) cone test.
enum class Certificate {
  ConeZero,
  VolumeOne,
  UnitaryMbyN,
  Apex2D,
  NecessaryViolated,
  Undetermined,
};

const char* certificate_name(Certificate c);

struct Tolerances {
  double verdict = 0.0;  ///< threshold on the cone distance
  double kkt = 0.0;      ///< cone solver KKT tolerance
  double eta = 0.0;      ///< ellipsoid duality-gap tolerance
};

struct ScalabilityReport {
  int m = 0, n = 0;
  double d_phi_lower = 0.0;        ///< lower bound on the distance to the scalable set
  double d_phi_upper = 0.0;        ///< upper bound on the same distance
  bool d_phi_lower_valid = false;  ///< false when d_phi_upper >= 1 (the lower
                                   ///  bound's hypothesis d < 1 cannot be verified)
  double cone_distance = 0.0;      ///< D
  double volume_ratio = 0.0;       ///< V
  bool scalable = false;
  Certificate certificate = Certificate::Undetermined;
  int k_active = 0;  ///< K = min(m, n(n+1)/2)
  double omega = 0.0;  ///< D + sqrt(K)
  Tolerances tolerances;
};

struct ApproximationResult {
  Mat approx_frame;              ///< n x m; scaled active columns are NOT unit norm
  double frobenius_error = 0.0;  ///< ||Phi - Phi~||_F
  double bound = 0.0;            ///< certified upper bound on the error (see below)
  std::vector<int> active_set;   ///< indices with rho_i > 0
};

struct MinimaxEstimate {
  double value = 0.0;  ///< max_i |<direction, phi_i>|; an upper bound on the minimax
  Vec direction;
  int samples = 0;
  bool is_upper_bound = true;
};

/// K = min(m, n(n+1)/2), the active-set size cap.
int k_active(int m, int n);

/// Envelope linking the volume ratio and cone distance for D < 1:
/// vd_lower(n,D) <= V^{4/n} <= vd_upper(n,D).
double vd_lower_envelope(int n, double d);
double vd_upper_envelope(int n, double d);

/// Bounds on the distance to the scalable set from D and V.
struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_valid = false;  ///< lower bound applies only when upper < 1
};
DistanceBounds distance_bounds(int m, int n, double cone_distance, double volume_ratio);

/// Full report: cone projection + minimal ellipsoid + verdict/certificate +
/// distance bounds. tol in (0, 1e-4]; solver tolerances are the module
/// defaults (KKT 1e-10, eta 1e-7). Errors: propagated solver errors.
ScalabilityReport analyze(const UnitNormFrame& frame, double tol = 1e-6);

/// Exact scalability test in the plane: reduce columns to angles mod pi,
/// find the largest circular gap g; the smallest enclosing double cone has
/// apex pi - g and the frame is scalable iff the apex is >= pi/2, i.e.
/// g <= pi/2 (closed condition, 1e-12 slack for angle arithmetic).
/// Errors: DimensionError if n != 2.
bool is_scalable_2d_exact(const UnitNormFrame& frame);

/// The scalable frame built from the minimal ellipsoid (with sparsified
/// John weights): active columns become V^{1/n} X^{1/2} phi_i, the rest stay.
/// `bound` is the Theorem-level certified error bound: the relative-error
/// form evaluated at d = d_phi_upper when d_phi_upper < (1/2)(1+sqrt(K))^{-1}
/// (its hypothesis), otherwise the direct form sqrt(K n (1 - V^{2/n})).
/// Errors: propagated.
ApproximationResult approximate_scalable(const UnitNormFrame& frame, double eta = 1e-7);

/// Seeded stochastic upper bound on min_{||d||=1} max_i |<d, phi_i>|:
/// uniform sphere samples, multi-start subgradient refinement, and a
/// shrinking-radius random polish. If the value drops below 1/sqrt(n) the
/// frame is certified NOT scalable (necessary condition violated); the
/// estimator can never certify the reverse direction.
MinimaxEstimate minimax_coherence(const UnitNormFrame& frame, int num_samples = 10000,
                                  int refine_iters = 100, std::uint64_t seed = 0);

std::string report_to_json(const ScalabilityReport& r);
std::string report_to_text(const ScalabilityReport& r);

}  // namespace scalekit::measures
