// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

#include "reebindex/errors.hpp"
#include "reebindex/linalg.hpp"

namespace reebindex {

/// A path Gamma : [0,1] -> Sp(2n) with Gamma(0) = Id, stored through samples
/// of its symmetric generator A(t), where Gamma'(t) = J0 A(t) Gamma(t).
///
/// Between samples the generator is interpolated by a piecewise cubic
/// (Catmull-Rom). Repeated knot times mark seams where A jumps, which is how
/// iterated paths carry their per-copy rescaled generators; interpolation
/// stencils never cross a seam.
class SymplecticPath {
 public:
  SymplecticPath(int n, std::vector<double> times, std::vector<Mat> generators,
                 double symmetry_tol = 1e-9);

  /// Path with constant generator A, i.e. Gamma(t) = exp(J0 A t).
  static SymplecticPath constant(int n, const Mat& A);

  /// Block rotation path: plane j rotates by angles[j] * t. The generator is
  /// diag(angles, angles) in (q, p) coordinates.
  static SymplecticPath rotation(int n, const Vec& angles);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Mat>& generators() const { return gens_; }

  /// Interpolated generator at time t (clamped to [0,1]).
  Mat generator_at(double t) const;

  /// Supremum of sampled generator norms; drives integrator step control and
  /// crossing-scan resolution.
  double generator_bound() const { return gen_bound_; }

 private:
  int n_;
  std::vector<double> times_;
  std::vector<Mat> gens_;
  std::vector<int> seg_begin_;  // index of the first sample of each smooth segment
  double gen_bound_ = 0.0;

  int segment_of(double t) const;
};

/// Direct sum of two paths, interleaving (q, p) blocks so the result again
/// uses the standard J0 on R^{2(n1+n2)}. Ingredient for the additivity axiom.
SymplecticPath direct_sum(const SymplecticPath& a, const SymplecticPath& b);

/// Pointwise product with the unitary loop rotating the first plane by
/// 2*pi*maslov*t. Realizes the Loop axiom: indices shift by 2*maslov.
SymplecticPath loop_composed(const SymplecticPath& p, int maslov);

/// Path generated by A(t) - eps * Id (the lower-index perturbation).
SymplecticPath perturbed(const SymplecticPath& p, double eps);

/// Gamma(t) by adaptive RKF45 integration of Gamma' = J0 A Gamma with
/// symplectic re-projection when drift exceeds symplectic_tol / 10.
Mat integrate_generator(const SymplecticPath& path, double t,
                        const Tolerances& tol = {});

/// One integration sweep over [0,1] whose accepted steps are memoized, so
/// that the crossing engines can query Gamma(t) at thousands of parameters
/// for the cost of short local re-integrations.
class FlowCache {
 public:
  FlowCache(const SymplecticPath& path, const Tolerances& tol = {});

  Mat at(double t) const;
  const Mat& endpoint() const { return knots_m_.back(); }
  const SymplecticPath& path() const { return path_; }

  /// Upper bound on sup_t ||Gamma(t)||_2 over [0,1], from the memoized knots
  /// with a Gronwall factor for the gaps. Drives Lipschitz certificates.
  double max_norm() const { return max_norm_; }

 private:
  const SymplecticPath& path_;
  Tolerances tol_;
  std::vector<double> knots_t_;
  std::vector<Mat> knots_m_;
  double max_norm_ = 1.0;
};

/// The k-fold iterate as a path on [0,1]: Gamma^k(t) = Gamma(kt - j) Gamma(1)^j
/// on [j/k, (j+1)/k], carried by the rescaled generator k * A(kt - j).
SymplecticPath iterate_path(const SymplecticPath& path, int k);

/// The inverse path t -> Gamma(t)^{-1}, generated by B = -Gamma^T A Gamma
/// (a short computation from Gamma^{-1} = -J0 Gamma^T J0).
SymplecticPath inverse_path(const SymplecticPath& path,
                            const Tolerances& tol = {});

/// Eigenvalue data of a return map: clustered spectrum with algebraic and
/// geometric multiplicities, the elliptic flag (all moduli within eig_tol of
/// one), and nullity = dim ker(M - Id) by singular value thresholding.
struct SpectralClassification {
  struct Eigenvalue {
    std::complex<double> z;
    int alg = 0;
    int geo = 0;
  };
  std::vector<Eigenvalue> eigenvalues;
  bool elliptic = false;
  int nullity = 0;
};

SpectralClassification classify_spectrum(const Mat& M,
                                         const Tolerances& tol = {});

/// dim ker(M - z Id) at threshold eig_tol (geometric multiplicity helper).
int kernel_dimension(const Mat& M, std::complex<double> z, double eig_tol);

}  // namespace reebindex
