// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "reebindex/bott.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "crossing.hpp"
#include "reebindex/errors.hpp"

namespace reebindex {
namespace {

using cd = std::complex<double>;

/// Arguments in [0, 2pi) of the unit-circle eigenvalues of a return map,
/// deduped at angular noise resolution including across the 0/2pi seam. Works
/// on the raw spectrum rather than on clusters: genuinely distinct angles
/// separated by less than the cluster radius must stay distinct here, since
/// the breakpoint gap decides whether splitting data is resolvable at all.
std::vector<double> unit_args(const Mat& g1, const Tolerances& tol) {
  Eigen::EigenSolver<Mat> es(g1, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("endpoint spectrum did not converge");
  double scale = 1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    scale = std::max(scale, std::abs(es.eigenvalues()[i]));
  const double band = std::max(100.0 * tol.eig_tol, 1e-6) * scale;
  std::vector<double> args;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    cd lam = es.eigenvalues()[i];
    if (std::abs(std::abs(lam) - 1.0) > band) continue;
    double th = std::arg(lam);
    if (th < 0) th += 2.0 * M_PI;
    if (th < 1e-8 || 2.0 * M_PI - th < 1e-8) th = 0.0;
    args.push_back(th);
  }
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end(),
                         [](double a, double b) { return b - a < 1e-8; }),
             args.end());
  if (args.size() > 1 && 2.0 * M_PI - args.back() + args.front() < 1e-8)
    args.pop_back();
  return args;
}

/// Perturbation size for the twisted index at angle phi: a safe fraction of
/// the angular distance from phi to the rest of the endpoint's unit
/// spectrum, so the -eps shift cannot drag another eigenvalue across z.
double epsilon_at(const Mat& g1, double phi, const Tolerances& tol) {
  double d = 2.0 * M_PI;
  for (double th : unit_args(g1, tol)) {
    double dd = std::abs(std::remainder(th - phi, 2.0 * M_PI));
    if (dd > 1e-8) d = std::min(d, dd);
  }
  return std::clamp(d / (4.0 * M_PI), 1e-7, 1e-3);
}

cd unit(double theta) { return cd(std::cos(theta), std::sin(theta)); }

}  // namespace

int bott_value(const SymplecticPath& path, cd z, const Tolerances& tol) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) > 1e-6)
    throw std::invalid_argument("bott_value requires |z| = 1");
  z /= r;
  // Definitional normalization at z = 1.
  if (std::abs(z - cd(1.0, 0.0)) <= 1e-9) return cz_minus(path, tol);

  Mat g1 = integrate_generator(path, 1.0);
  double phi = std::arg(z);
  if (phi < 0) phi += 2.0 * M_PI;
  double eps = epsilon_at(g1, phi, tol);

  // Same stability discipline as cz_minus: the perturbed value must agree at
  // two consecutive halvings. A level where z still sits on the perturbed
  // endpoint spectrum is unreliable and does not vote.
  std::optional<int> prev;
  for (int level = 0; level < 9 && eps >= 1e-12; ++level, eps *= 0.5) {
    std::optional<int> value;
    try {
      detail::CrossingSum s =
          detail::twisted_crossing_sum(perturbed(path, eps), z, tol);
      if (!s.crossing_t0 && !s.crossing_t1) value = s.interior_sum;
    } catch (const Error&) {
    }
    if (value && prev && *value == *prev) return *value;
    prev = value;
  }
  throw EpsilonSelectionFailure(
      "no epsilon with a stable twisted index above machine precision");
}

BottFunction bott_function(const SymplecticPath& path, const Tolerances& tol) {
  BottFunction out;
  Mat g1 = integrate_generator(path, 1.0);
  out.breakpoints = unit_args(g1, tol);
  const int at_one = cz_minus(path, tol);
  if (out.breakpoints.empty()) {
    out.arc_values.push_back(at_one);
    return out;
  }
  for (double th : out.breakpoints)
    out.point_values.push_back(th == 0.0 ? at_one
                                         : bott_value(path, unit(th), tol));
  const std::size_t m = out.breakpoints.size();
  for (std::size_t i = 0; i < m; ++i) {
    double lo = out.breakpoints[i];
    double hi = (i + 1 < m) ? out.breakpoints[i + 1]
                            : out.breakpoints[0] + 2.0 * M_PI;
    if (hi > 2.0 * M_PI) {
      // the wrap-around arc contains z = 1, where the value is known
      out.arc_values.push_back(at_one);
    } else {
      out.arc_values.push_back(bott_value(path, unit(0.5 * (lo + hi)), tol));
    }
  }
  return out;
}

SplittingData splitting_numbers(const SymplecticPath& path, cd z,
                                const Tolerances& tol) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) > 1e-6)
    throw std::invalid_argument("splitting_numbers requires |z| = 1");
  z /= r;

  Mat g1 = integrate_generator(path, 1.0);
  SpectralClassification sc = classify_spectrum(g1, tol);
  double scale = 1.0;
  for (const auto& ev : sc.eigenvalues) scale = std::max(scale, std::abs(ev.z));
  const double band = std::max(100.0 * tol.eig_tol, 1e-6) * scale;

  SplittingData out;
  for (const auto& ev : sc.eigenvalues) {
    if (std::abs(ev.z - z) <= band) {
      out.m += ev.alg;
      out.nu += ev.geo;
    }
  }
  if (out.m == 0)
    throw std::invalid_argument(
        "splitting_numbers requires z in the unit spectrum of Gamma(1)");

  std::vector<double> bps = unit_args(g1, tol);
  double gap = 2.0 * M_PI;
  if (bps.size() > 1) {
    for (std::size_t i = 1; i < bps.size(); ++i)
      gap = std::min(gap, bps[i] - bps[i - 1]);
    gap = std::min(gap, 2.0 * M_PI - bps.back() + bps.front());
  }
  // The probe angle must stay inside the two arcs adjacent to z.
  if (gap < 4e-6)
    throw GapTooSmall("breakpoints cluster below the 1e-6 rad resolution");
  const double eps = std::min(gap / 4.0, 0.05);

  const int v0 = bott_value(path, z, tol);
  out.s_plus = bott_value(path, z * unit(eps), tol) - v0;
  out.s_minus = bott_value(path, z * unit(-eps), tol) - v0;
  return out;
}

EllipticCertificate elliptic_certificate(const SymplecticPath& path, int j,
                                         const Tolerances& tol) {
  if (j < 2)
    throw std::invalid_argument("elliptic_certificate requires j >= 2");
  const int n = path.n();

  EllipticCertificate out;
  out.j = j;
  SymplecticPath pj = iterate_path(path, j);
  out.mu_minus_1 = cz_minus(path, tol);
  out.mu_minus_j = cz_minus(pj, tol);
  out.mu_plus_1 = cz_plus(path, tol);
  out.mu_plus_j = cz_plus(pj, tol);
  out.spectrum_elliptic =
      classify_spectrum(integrate_generator(path, 1.0), tol).elliptic;

  auto conclude = [&](const char* branch, int pinned, bool pin_holds) {
    // The theorem guarantees the pinned equalities and ellipticity; if they
    // fail numerically, the index computation is inconsistent.
    if (!out.spectrum_elliptic || !pin_holds)
      throw CrossingResolutionFailure(
          "pinching hypotheses hold but the pinned conclusion failed");
    out.verdict = EllipticVerdict::Elliptic;
    out.branch = branch;
    out.pinned_index = pinned;
  };

  if (out.mu_minus_1 <= -n && out.mu_minus_j >= -n)
    conclude("lower", -n, out.mu_minus_1 == -n && out.mu_minus_j == -n);
  else if (out.mu_plus_1 >= n && out.mu_plus_j <= n)
    conclude("upper", n, out.mu_plus_1 == n && out.mu_plus_j == n);
  return out;
}

}  // namespace reebindex
