// SPDX-License-Identifier: MIT
#pragma once
/// \file mvee.hpp
/// \brief Minimal (Loewner-John) ellipsoid of the symmetrized frame.
///
/// For a unit-norm frame the symmetrized set {+-phi_i} is centrally
/// symmetric, so its minimal enclosing ellipsoid is origin-centered and the
/// problem reduces to D-optimal design on the m vectors: maximize
/// log det M(p), M(p) = sum p_i phi_i phi_i^T over the simplex. The dual
/// shape matrix is X^{-1} = n * M(p*) and the John weights are rho = n * p*.

#include <cstdint>
#include <string>
#include <vector>

#include "scalekit/frame.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit::mvee {

struct MinimalEllipsoid {
  Mat x_inv;                         ///< X^{-1} = sum rho_i phi_i phi_i^T (SPD, trace n)
  Mat x;                             ///< X, the ellipsoid is {y : <Xy,y> <= 1}
  Vec rho;                           ///< John weights, >= 0, sum = n
  Vec eigenvalues;                   ///< eigenvalues of x_inv, ascending
  double volume_ratio = 0.0;         ///< V = prod sqrt(lambda_i), in (0, 1]
  std::vector<int> contact_indices;  ///< {i : rho_i > n*eta}
  double eta = 0.0;                  ///< duality-gap tolerance used
};

struct CertificateReport {
  double reconstruction_residual = 0.0;    ///< ||X^{-1} - sum rho phi phi^T||_F
  double max_containment_violation = 0.0;  ///< max(0, max_i <X phi_i, phi_i> - 1)
  double max_contact_slack = 0.0;          ///< max over contacts |<X phi_i, phi_i> - 1|
  bool reconstruction_ok = false;
  bool containment_ok = false;
  bool contact_ok = false;
  bool pass = false;
};

/// Solves the design problem by coordinate ascent with away steps
/// (Wolfe-Atwood), which certifies both kappa <= n(1+eta) for all columns
/// and kappa >= n(1-eta) on the support (so contact points really touch).
/// max_iterations 0 means the default budget 1e5 * ln(m/eta).
/// When sparsify is set, the John weights are post-processed by conic
/// Caratheodory elimination to at most n(n+1)/2 strictly positive entries
/// without changing X^{-1}.
/// Errors: NotAFrame, MaxIterations.
MinimalEllipsoid minimal_ellipsoid(const UnitNormFrame& frame, double eta = 1e-7,
                                   long max_iterations = 0, bool sparsify = false);

/// Measures the John optimality conditions of an ellipsoid against a frame;
/// each residual is compared with tol. Never throws.
CertificateReport john_certificate(const UnitNormFrame& frame, const MinimalEllipsoid& e,
                                   double tol);

/// Builds a unit-norm frame of m >= n vectors whose minimal ellipsoid is the
/// prescribed E(X): eigendecompose x_inv = Q Lambda Q^T, rotate a seeded
/// random orthogonal basis by Givens equalization until W^T Lambda W has
/// unit diagonal, and take phi_i = Q Lambda^{1/2} w_i; indexes n..m-1 are
/// duplicates of phi_0 (boundary points, so the ellipsoid is unchanged).
/// Errors: TraceMismatch (|tr - n| > 1e-10), NotSPD, DimensionError (m < n).
UnitNormFrame frame_from_ellipsoid(const Mat& x_inv, int m, std::uint64_t seed);

/// {"n": ..., "x_inv": [[...]], "rho": [...], "volume_ratio": ..., "eta": ...}
std::string ellipsoid_to_json(const MinimalEllipsoid& e);

/// Reads {"n": int, "x_inv": [[...]]} (other keys ignored).
/// Errors: IoError, ParseError.
Mat read_xinv_json(const std::string& path);

}  // namespace scalekit::mvee
