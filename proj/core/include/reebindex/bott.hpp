// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Bott's index function on the unit circle, splitting numbers, and the
// index-pinching ellipticity certificate.
#pragma once

#include <complex>
#include <vector>

#include "reebindex/index.hpp"
#include "reebindex/sympath.hpp"

namespace reebindex {

/// Piecewise-constant index function z -> Gamma(z) on the unit circle.
///
/// The breakpoints are the arguments (in [0, 2pi)) of the unit-circle
/// eigenvalues of Gamma(1); jumps can occur only there. arc_values[i] is the
/// constant value on the open arc from breakpoints[i] counterclockwise to the
/// next breakpoint (cyclically), and point_values[i] is the value at the
/// breakpoint itself, which follows the lower convention and need not match
/// either adjacent arc. A path with no unit eigenvalues has one arc covering
/// the whole circle and no breakpoints.
struct BottFunction {
  std::vector<double> breakpoints;
  std::vector<int> arc_values;
  std::vector<int> point_values;
};

/// One-sided jumps of the Bott function at a unit eigenvalue z, together
/// with the multiplicities of z in the endpoint spectrum.
struct SplittingData {
  int s_plus = 0;   ///< lim Gamma(e^{+i eps} z) - Gamma(z)
  int s_minus = 0;  ///< lim Gamma(e^{-i eps} z) - Gamma(z)
  int nu = 0;       ///< geometric multiplicity of z in Gamma(1)
  int m = 0;        ///< algebraic multiplicity of z in Gamma(1)
};

enum class EllipticVerdict { Elliptic, HypothesisNotMet };

/// Outcome of the index-pinching ellipticity test for a path and an iterate
/// order j. The four indices are always reported; when the verdict is
/// Elliptic the matching pair is pinned to -n (lower branch) or +n (upper
/// branch) and the endpoint spectrum lies on the unit circle.
struct EllipticCertificate {
  EllipticVerdict verdict = EllipticVerdict::HypothesisNotMet;
  std::string branch = "none";  ///< "lower", "upper", or "none"
  int j = 0;
  int mu_minus_1 = 0;  ///< cz_minus of the path
  int mu_minus_j = 0;  ///< cz_minus of the j-th iterate
  int mu_plus_1 = 0;   ///< cz_plus of the path
  int mu_plus_j = 0;   ///< cz_plus of the j-th iterate
  int pinned_index = 0;
  bool spectrum_elliptic = false;
};

/// The z-twisted lower index Gamma(z): the limit as eps -> 0+ of the full
/// crossing sum of the path perturbed by -eps over the crossing condition
/// det(Gamma(t) - z Id) = 0, t in (0, 1]. At z = 1 this is cz_minus by
/// construction, and summing over the k-th roots of unity reproduces
/// cz_minus of the k-th iterate (Bott's formula).
int bott_value(const SymplecticPath& path, std::complex<double> z,
               const Tolerances& tol = {});

/// Evaluate bott_value at every breakpoint and on every arc.
BottFunction bott_function(const SymplecticPath& path,
                           const Tolerances& tol = {});

/// Splitting numbers of a unit eigenvalue z of Gamma(1). The angular probe
/// offset is a quarter of the smallest breakpoint gap; if the breakpoints
/// cluster below resolution the jump cannot be attributed and GapTooSmall
/// is thrown. A z that is not a unit eigenvalue violates the precondition
/// and raises std::invalid_argument.
SplittingData splitting_numbers(const SymplecticPath& path,
                                std::complex<double> z,
                                const Tolerances& tol = {});

/// Index-pinching ellipticity test. Lower branch: cz_minus(path) <= -n and
/// cz_minus(iterate j) >= -n force both indices to equal -n and the endpoint
/// to be elliptic. Upper branch: the dual test with cz_plus and +n. Requires
/// j >= 2. If a branch's hypotheses hold but the pinned equalities or the
/// spectrum check fail, the computation is inconsistent and
/// CrossingResolutionFailure is thrown.
EllipticCertificate elliptic_certificate(const SymplecticPath& path, int j,
                                         const Tolerances& tol = {});

}  // namespace reebindex
