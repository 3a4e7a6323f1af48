// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Internal z-twisted crossing engine shared by the index and bott modules.
// Not installed.
#pragma once

#include <complex>
#include <vector>

#include "reebindex/sympath.hpp"

namespace reebindex::detail {

/// One resolved crossing instant of det(Gamma(t) - z Id) = 0.
struct Crossing {
  double t = 0.0;
  int signature = 0;  ///< signature of the crossing form on the kernel
  int kernel_dim = 0;
};

/// Crossing data for one path and one unit parameter z. Interior crossings
/// are listed individually; the endpoints are reported separately because
/// every index flavor weights them differently.
struct CrossingSum {
  int sig_t0 = 0;           ///< signature at t = 0 (only z = 1 crosses there)
  bool crossing_t0 = false;
  int sig_t1 = 0;           ///< signature at t = 1 when it is a crossing
  bool crossing_t1 = false;
  int interior_sum = 0;     ///< sum of interior signatures
  std::vector<Crossing> interior;

  /// Robbin-Salamon weighting, in units of 1/2.
  int twice_rs() const { return sig_t0 + 2 * interior_sum + sig_t1; }
};

/// Scan [0,1] for crossings of det(Gamma(t) - z Id) with certified Lipschitz
/// skips, golden-section refinement to 1e-10 in t, and kernel signatures
/// regularized at eig_tol. A kernel of constant dimension along the whole
/// path (for example an identity factor) is deflated away by scanning the
/// first singular value above the persistent count; such a kernel carries a
/// vanishing crossing form and contributes nothing.
CrossingSum twisted_crossing_sum(const SymplecticPath& path,
                                 std::complex<double> z,
                                 const Tolerances& tol);

/// Perturbation size for the lower/upper extensions: half the smallest
/// positive gap between unit-eigenvalue arguments of Gamma(1) (with 0 as a
/// reference angle), divided by 2 pi, clamped to [1e-7, 1e-3].
double select_epsilon(const Mat& endpoint, const Tolerances& tol);

/// Signature of the hermitian form v -> v* A v restricted to the columns of
/// K (an orthonormal kernel basis), thresholded at eig_tol scale.
int restricted_form_signature(const Mat& A, const CMat& K,
                              const Tolerances& tol);

/// Orthonormal basis of the numerical kernel of (M - z Id) at eig_tol scale.
CMat kernel_basis(const Mat& M, std::complex<double> z, const Tolerances& tol);

}  // namespace reebindex::detail
