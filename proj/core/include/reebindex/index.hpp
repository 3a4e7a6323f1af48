// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "reebindex/sympath.hpp"

namespace reebindex {

/// Half-integer stored as twice its value, so all index arithmetic stays
/// exact. rs indices live in (1/2) Z; everything else is integral.
struct HalfInt {
  int twice = 0;

  bool is_integer() const { return twice % 2 == 0; }
  double value() const { return twice / 2.0; }

  /// Render as "p" when integral, else "p/2" with p odd.
  std::string str() const;

  friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
  friend bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
};

/// Everything the index engines know about one path, cross-validated.
struct IndexReport {
  HalfInt mu_rs;
  int mu_minus = 0;
  int mu_plus = 0;
  double mean = 0.0;
  int nullity = 0;
  bool nondegenerate = false;
};

/// A change of trivialization acts on indices by a loop of symplectic
/// matrices; only its Maslov index matters.
struct TrivializationShift {
  int maslov = 0;
};

/// Robbin-Salamon index: crossing-form count with half weights at both
/// endpoints. Defined for degenerate endpoints as well.
HalfInt rs_index(const SymplecticPath& path, const Tolerances& tol = {});

/// Conley-Zehnder index of a path with non-degenerate endpoint. Runs the
/// crossing-form engine and an independent unitary-winding engine and insists
/// they agree.
///
/// Throws DegenerateEndpoint when ker(Gamma(1) - Id) is non-trivial and
/// CrossingResolutionFailure when either engine cannot resolve its count.
int cz_index(const SymplecticPath& path, const Tolerances& tol = {});

/// Lower semicontinuous extension: cz_index of the path generated by
/// A - eps Id, with eps chosen adaptively from the spectral gaps of Gamma(1)
/// and validated stable under eps -> eps/2.
int cz_minus(const SymplecticPath& path, const Tolerances& tol = {});

/// Upper semicontinuous extension, computed as -cz_minus of the inverse path.
int cz_plus(const SymplecticPath& path, const Tolerances& tol = {});

/// Mean index: limit of cz_minus(Gamma^k)/k, estimated by extrapolation over
/// k = k_max/4, k_max/2, k_max and clamped into the exact enclosure
/// intersect_k [(mu_k - n)/k, (mu_k + n)/k]. The result is guaranteed within
/// n/k_max of the limit.
double mean_index(const SymplecticPath& path, int k_max = 16,
                  const Tolerances& tol = {});

/// Optional third engine: spectral count of the periodic operator
/// L v = -J0 v' - A(t) v in a truncated Fourier basis of fourier_modes
/// harmonics, labeled so the zero path yields -n. Agrees with cz_minus.
///
/// Throws ContinuationAmbiguity when an eigenvalue sits too close to zero to
/// label its branch.
int spectral_flow_index(const SymplecticPath& path, int fourier_modes,
                        const Tolerances& tol = {});

/// Assemble the full report (rs, both extensions, mean, nullity).
IndexReport index_report(const SymplecticPath& path, int mean_k_max = 16,
                         const Tolerances& tol = {});

/// Shift all indices by exactly 2 * maslov; nullity is untouched.
IndexReport apply_trivialization_shift(const IndexReport& report,
                                       const TrivializationShift& shift);

}  // namespace reebindex
