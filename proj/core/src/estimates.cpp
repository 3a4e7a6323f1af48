// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT

#include "reebindex/estimates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reebindex/errors.hpp"

namespace reebindex {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Relative tolerance for detecting exact resonances and exact threshold
// ratios in floating-point input data.
constexpr double kExactTol = 1e-9;

void validate_prequant(const PrequantizationData& data) {
  if (data.n < 0) {
    throw std::invalid_argument("prequantization half-dimension is negative");
  }
  if (data.m < 1) {
    throw std::invalid_argument("finite group order must be at least 1");
  }
  for (int b : data.betti) {
    if (b < 0) throw std::invalid_argument("Betti numbers must be nonnegative");
  }
  if (data.multiples.empty() || data.multiples.count(1) == 0) {
    throw std::invalid_argument("multiples must contain the simple iterate 1");
  }
  if (*data.multiples.begin() < 1) {
    throw std::invalid_argument("multiples must be positive iterates");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Prequantization contact homology
// ---------------------------------------------------------------------------

HCTable prequant_hc(const PrequantizationData& data,
                    std::pair<int, int> degree_range) {
  validate_prequant(data);
  if (degree_range.first > degree_range.second) {
    throw std::invalid_argument("degree range is empty");
  }
  HCTable table;
  table.cutoff = degree_range.second;
  for (int deg = degree_range.first; deg <= degree_range.second; ++deg) {
    long long rank = 0;
    for (int k : data.multiples) {
      const long long idx = static_cast<long long>(deg) + data.n -
                            static_cast<long long>(k) * data.mu_phi;
      if (idx >= 0 && idx < static_cast<long long>(data.betti.size())) {
        rank += data.betti[static_cast<std::size_t>(idx)];
      }
    }
    if (rank > 0) table.ranks[deg] = static_cast<int>(rank);
  }
  if (!table.ranks.empty()) table.k_minus = table.ranks.begin()->first;
  return table;
}

// ---------------------------------------------------------------------------
// Morse-Bott perturbation and homotopy/Chern bookkeeping
// ---------------------------------------------------------------------------

int perturbed_orbit_index(int ind_p, int k, int mu_phi_k, int n) {
  if (n < 0) throw std::invalid_argument("half-dimension is negative");
  if (k < 1) throw std::invalid_argument("iterate must be at least 1");
  if (ind_p < 0 || ind_p > 2 * n) {
    throw MorseIndexOutOfRange("Morse index " + std::to_string(ind_p) +
                               " outside [0, " + std::to_string(2 * n) +
                               "] for half-dimension " + std::to_string(n));
  }
  return mu_phi_k - n + ind_p;
}

std::optional<std::set<int>> homotopy_multiples(int m, bool omega_pi2_zero,
                                                int T) {
  if (m < 1) throw std::invalid_argument("group order must be at least 1");
  if (T <= 1) throw std::invalid_argument("action cutoff must exceed 1");
  if (omega_pi2_zero) return std::set<int>{1};
  // A nontrivial multiple exists, but its value is not determined by the
  // group order and cutoff alone; the caller must supply the explicit set.
  return std::nullopt;
}

int chern_pairing_check(int m, int k, int minimal_chern, bool positivity) {
  if (m < 1) throw std::invalid_argument("group order must be at least 1");
  if (k < 1) throw std::invalid_argument("iterate must be at least 1");
  if (minimal_chern < 1) {
    throw std::invalid_argument("minimal Chern number must be at least 1");
  }
  if (!positivity) {
    throw HypothesesNotMet(
        "Chern pairing bound needs the monotonicity/positivity hypothesis");
  }
  if (k == 1) {
    throw HypothesesNotMet(
        "the simple iterate bounds no spherical class; need k > 1");
  }
  return 2 * minimal_chern;
}

// ---------------------------------------------------------------------------
// Pinched hypersurfaces
// ---------------------------------------------------------------------------

int ind_hr(int n, double S, double R) {
  if (n < 0) throw std::invalid_argument("half-dimension is negative");
  if (!(S > 0.0) || !(R > 0.0)) {
    throw std::invalid_argument("period and radius must be positive");
  }
  const double x = S / (kTwoPi * R * R);
  const long long nearest = std::llround(x);
  if (nearest >= 1 && std::abs(x - nearest) <= kExactTol * std::max(1.0, x)) {
    return static_cast<int>((2 * n + 2) * nearest - n - 1);
  }
  const long long floor_x = static_cast<long long>(std::floor(x));
  return static_cast<int>((2 * n + 2) * floor_x + n + 1);
}

PinchingReport pinched_index_bound(const PinchingData& data) {
  if (data.n < 0) throw std::invalid_argument("half-dimension is negative");
  if (!(data.r > 0.0) || !(data.r <= data.R)) {
    throw std::invalid_argument("pinching radii must satisfy 0 < r <= R");
  }
  if (!(data.k > 1.0)) {
    throw std::invalid_argument("pinching exponent must exceed 1");
  }
  // Compare squared quantities: the gate R/r < sqrt(k/(k-1)) is equivalent
  // to (R/r)^2 < k/(k-1), which avoids a square root on the input side.
  const double ratio_sq = (data.R * data.R) / (data.r * data.r);
  const double threshold_sq = data.k / (data.k - 1.0);
  const bool boundary =
      std::abs(ratio_sq - threshold_sq) <= kExactTol * threshold_sq;
  if (!boundary && ratio_sq > threshold_sq) {
    throw PinchingViolated("R/r = " + std::to_string(std::sqrt(ratio_sq)) +
                           " is not below sqrt(k/(k-1)) = " +
                           std::to_string(std::sqrt(threshold_sq)));
  }

  PinchingReport report;
  report.floor_k = static_cast<int>(std::floor(data.k));
  report.bound = (2 * data.n + 2) * report.floor_k - data.n;
  report.min_period = kTwoPi * data.r * data.r;
  const double S = report.min_period * report.floor_k;
  report.floor_argument = S / (kTwoPi * data.R * data.R);
  report.ind_hr_value = ind_hr(data.n, S, data.R);
  report.correction = -1;
  report.boundary_case = boundary;
  return report;
}

}  // namespace reebindex
