// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Closed-form index arithmetic away from the toric setting: contact homology
// of prequantization bundles, the Morse-Bott perturbation index formula,
// pinched-hypersurface convexity bounds, and homotopy/Chern bookkeeping.
#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "reebindex/toric.hpp"

namespace reebindex {

/// Input data for a prequantization circle bundle over a closed symplectic
/// base N. The caller supplies the topology; nothing here is computed from a
/// manifold.
///
/// `multiples` is the set of iterates of the simple fiber orbit that stay in
/// the chosen free homotopy class below the action cutoff. It always
/// contains 1. `mu_phi` is the Robbin-Salamon index of the simple orbit in
/// the chosen trivialization (even for circle-action trivializations by a
/// capping disk, but not enforced here). `m` is the order of the finite
/// group acting on the bundle, 1 for honest prequantizations.
struct PrequantizationData {
  int n = 0;                ///< half-dimension of the contact structure
  std::vector<int> betti;   ///< Betti numbers of the base, index = degree
  int mu_phi = 0;           ///< index of the simple fiber orbit
  std::set<int> multiples;  ///< admissible iterates, 1 always included
  int m = 1;                ///< order of the finite symmetry group
};

/// Pinching data for a star-shaped hypersurface in R^{2n+2}: the defining
/// Hamiltonian H satisfies ||v||^2 R^{-2} <= <d^2H(x) v, v> <= ||v||^2 r^{-2}
/// with 0 < r <= R, and a bound is requested at pinching exponent k > 1.
struct PinchingData {
  int n = 0;
  double r = 0.0;
  double R = 0.0;
  double k = 0.0;
};

/// Bound report of pinched_index_bound with every intermediate quantity.
///
/// The inequality chain: every closed characteristic has period at least
/// `min_period` = 2 pi r^2 (Croke-Weinstein), so the floor(k)-th iterate has
/// period at least S = min_period * floor(k); the comparison flow of
/// ||x||^2 / (2 R^2) over time S has lower index `ind_hr_value` = ind_hr(n,
/// S, R); and the contact-plane path gains one over the full path because
/// the radial factor contributes `correction` = -1. Strictly inside the
/// pinching gate this yields bound = ind_hr_value + 1 = (2n+2) floor(k) - n.
/// When R/r sits exactly at the threshold sqrt(k/(k-1)) the bound still
/// holds as a limit and `boundary_case` is set; the intermediate
/// ind_hr_value then reflects the degenerate resonant comparison instead.
struct PinchingReport {
  int floor_k = 0;              ///< floor of the pinching exponent
  int bound = 0;                ///< lower bound (2n+2) floor(k) - n
  double min_period = 0.0;      ///< Croke-Weinstein minimal period 2 pi r^2
  double floor_argument = 0.0;  ///< S / (2 pi R^2) at S = min_period*floor(k)
  int ind_hr_value = 0;         ///< ind_hr(n, min_period * floor(k), R)
  int correction = -1;          ///< index shift from the radial splitting
  bool boundary_case = false;   ///< ratio met the threshold exactly
};

/// Contact homology table of a prequantization bundle: the rank at degree d
/// is sum over k in multiples of betti[d + n - k * mu_phi], with
/// out-of-range Betti indices contributing 0. Degrees run over the closed
/// range `degree_range`; only nonzero ranks are stored, k_minus is the
/// smallest populated degree and cutoff is the top of the range. With
/// multiples = {1} the table is the Betti list shifted down by n.
/// Invalid data (negative Betti entries, multiples missing 1 or containing
/// non-positive iterates, m < 1, n < 0, empty range) raises
/// std::invalid_argument.
HCTable prequant_hc(const PrequantizationData& data,
                    std::pair<int, int> degree_range);

/// Index of a nondegenerate orbit obtained by perturbing a Morse-Bott
/// family: a critical point p of the perturbing Morse function on the orbit
/// space turns the k-th iterate (of index mu_phi_k) into an orbit of
/// Conley-Zehnder index mu_phi_k - n + ind_p. Requires 0 <= ind_p <= 2n
/// (else MorseIndexOutOfRange) and k >= 1, n >= 0.
int perturbed_orbit_index(int ind_p, int k, int mu_phi_k, int n);

/// The set of iterates of the fiber orbit lying in the same free homotopy
/// class, truncated below the action cutoff T. When the symplectic form
/// vanishes on pi_2 of the base the class is primitive and the set is {1};
/// otherwise only existence of a nontrivial multiple is known, the set is
/// not computable from (m, T) alone, and nullopt (Unknown) is returned so
/// the caller must supply it. Requires m >= 1 and T > 1.
std::optional<std::set<int>> homotopy_multiples(int m, bool omega_pi2_zero,
                                                int T);

/// Lower bound for the index of the k-th iterate from Chern-class pairing:
/// for k != 1 the iterate bounds a nontrivial spherical class with positive
/// symplectic area 1/m * (k - 1), and monotonicity converts the pairing into
/// the index bound 2 * minimal_chern (2 in the generic monotone case, 4 when
/// the minimal Chern number is at least 2). The positivity flag asserts the
/// monotonicity hypothesis; without it, or with k = 1 where no spherical
/// class arises, HypothesesNotMet is thrown. Requires m >= 1, k >= 1,
/// minimal_chern >= 1.
int chern_pairing_check(int m, int k, int minimal_chern,
                        bool positivity = true);

/// Dynamical convexity bound for a pinched hypersurface: if
/// R/r < sqrt(k/(k-1)) then the floor(k)-th iterate of every closed
/// characteristic has lower Conley-Zehnder index at least
/// (2n+2) floor(k) - n. Equality of the ratio with the threshold (within
/// relative 1e-9) is accepted as the closed limiting case and flagged;
/// a strictly larger ratio raises PinchingViolated. Requires n >= 0,
/// 0 < r <= R and k > 1.
PinchingReport pinched_index_bound(const PinchingData& data);

/// Closed-form lower Conley-Zehnder index of the time-S flow of
/// ||x||^2 / (2 R^2) on R^{2n+2}: with x = S / (2 pi R^2),
/// (2n+2) x - n - 1 when x is a positive integer (within 1e-9) and
/// (2n+2) floor(x) + n + 1 otherwise. Agrees exactly with cz_minus of the
/// rotation path with n+1 equal angles 2 pi x. Requires S > 0, R > 0,
/// n >= 0.
int ind_hr(int n, double S, double R);

}  // namespace reebindex
