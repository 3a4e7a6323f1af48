// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "reebindex/index.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "crossing.hpp"

namespace reebindex {

namespace {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Winding engine (Algorithm B). The continuous circle map rho : Sp(2n) -> S^1
// takes value (-1)^{m^-/2} prod lambda^(p-q) over upper unit eigenvalues,
// where (p, q) is the Krein signature of the invariant subspace and m^- the
// total multiplicity of negative real eigenvalues. The index is the total
// winding of rho along the path plus a normal-form correction at the
// endpoint, divided by pi.
// ---------------------------------------------------------------------------

struct RhoData {
  double phase = 0.0;          // arg rho(M), any branch
  double endpoint_corr = 0.0;  // Delta arg rho along the canonical extension
};

/// Invariant-subspace basis for an eigenvalue cluster, via a resolvent
/// contour integral around it. Robust for multiple eigenvalues, where plain
/// eigenvector bases degrade.
CMat cluster_basis(const Mat& M, cd center, double radius, int mult) {
  const int d = static_cast<int>(M.rows());
  CMat mc = M.cast<cd>();
  CMat proj = CMat::Zero(d, d);
  const int quad = 24;
  for (int k = 0; k < quad; ++k) {
    double phi = 2.0 * M_PI * k / quad;
    cd w = radius * std::polar(1.0, phi);
    CMat shifted = (center + w) * CMat::Identity(d, d) - mc;
    proj += w * shifted.partialPivLu().solve(CMat::Identity(d, d));
  }
  proj /= static_cast<double>(quad);
  Eigen::JacobiSVD<CMat> svd(proj, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(mult);
}

RhoData analyze_rho(const Mat& M, const Tolerances& tol) {
  (void)tol;
  const int d = static_cast<int>(M.rows());
  const int n = d / 2;
  Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("spectrum for winding engine did not converge");
  std::vector<cd> evs(d);
  double spec_scale = 1.0;
  for (int i = 0; i < d; ++i) {
    evs[i] = es.eigenvalues()[i];
    spec_scale = std::max(spec_scale, std::abs(evs[i]));
  }

  // greedy union-find clustering at a radius well below the smallest
  // perturbation scale the callers use
  const double r_cluster = 1e-8 * spec_scale;
  std::vector<int> parent(d);
  for (int i = 0; i < d; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(evs[i] - evs[j]) < r_cluster) parent[find(i)] = find(j);

  std::vector<std::vector<int>> clusters;
  {
    std::vector<int> root_of(d, -1);
    for (int i = 0; i < d; ++i) {
      int r = find(i);
      if (root_of[r] < 0) {
        root_of[r] = static_cast<int>(clusters.size());
        clusters.emplace_back();
      }
      clusters[root_of[r]].push_back(i);
    }
  }

  std::vector<cd> centers(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    cd sum = 0.0;
    for (int i : clusters[c]) sum += evs[i];
    centers[c] = sum / static_cast<double>(clusters[c].size());
  }

  const double ax_tol = 1e-8 * spec_scale;   // distance to the real axis
  const double circ_tol = 1e-5 * spec_scale;  // distance to the unit circle
  const Mat j0 = standard_J(n);
  const CMat krein = cd(0.0, -1.0) * j0.cast<cd>();

  RhoData out;
  int m_neg = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const cd ctr = centers[c];
    const int mult = static_cast<int>(clusters[c].size());
    if (std::abs(ctr.imag()) <= ax_tol) {
      if (ctr.real() < 0.0) m_neg += mult;
      continue;
    }
    if (ctr.imag() < 0.0) continue;  // conjugate handled through its partner
    if (std::abs(std::abs(ctr) - 1.0) > circ_tol) continue;

    double gap = 2.0 * spec_scale;
    for (std::size_t c2 = 0; c2 < clusters.size(); ++c2)
      if (c2 != c) gap = std::min(gap, std::abs(centers[c2] - ctr));
    double radius = std::clamp(0.45 * gap, 1e-9, 0.2);
    CMat basis = cluster_basis(M, ctr, radius, mult);
    CMat h = basis.adjoint() * krein * basis;
    h = 0.5 * (h + CMat(h.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMat> hes(h);
    if (hes.info() != Eigen::Success)
      throw EigenSolverFailure("Krein form eigenvalues did not converge");
    int p = 0, q = 0;
    for (int i = 0; i < hes.eigenvalues().size(); ++i) {
      if (hes.eigenvalues()[i] > 1e-6)
        ++p;
      else if (hes.eigenvalues()[i] < -1e-6)
        ++q;
    }
    double theta = std::atan2(ctr.imag(), ctr.real());  // in (0, pi)
    out.phase += (p - q) * theta;
    out.endpoint_corr += (p - q) * (M_PI - theta);
  }

  if (m_neg % 2 != 0)
    throw CrossingResolutionFailure(
        "odd count of negative real eigenvalues; spectrum unresolved");
  if ((m_neg / 2) % 2 != 0) out.phase += M_PI;
  return out;
}

/// Total unwrapped winding of arg rho(Gamma(t)) over [0,1], by adaptive
/// bisection of phase increments until each principal-value step is small.
double rho_winding(const FlowCache& flow, const Tolerances& tol) {
  const int n = flow.path().n();
  double rate = 4.0 * n * flow.path().generator_bound() + 4.0;
  int n0 = std::clamp(static_cast<int>(std::ceil(rate)), 64, 4096);

  auto phase_at = [&](double t) { return analyze_rho(flow.at(t), tol).phase; };

  struct Seg {
    double t0, t1, p0, p1;
  };
  std::vector<Seg> stack;
  double prev_t = 0.0, prev_p = phase_at(0.0);
  for (int i = 1; i <= n0; ++i) {
    double t = static_cast<double>(i) / n0;
    double p = phase_at(t);
    stack.push_back({prev_t, t, prev_p, p});
    prev_t = t;
    prev_p = p;
  }

  double winding = 0.0;
  long budget = 120000;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double delta = std::remainder(s.p1 - s.p0, 2.0 * M_PI);
    if (std::abs(delta) < 0.5 || s.t1 - s.t0 < 1e-9) {
      winding += delta;
      continue;
    }
    if (--budget < 0)
      throw CrossingResolutionFailure(
          "winding refinement exceeded its evaluation budget");
    double tm = 0.5 * (s.t0 + s.t1);
    double pm = phase_at(tm);
    stack.push_back({s.t0, tm, s.p0, pm});
    stack.push_back({tm, s.t1, pm, s.p1});
  }
  return winding;
}

int cz_by_winding(const SymplecticPath& path, const Tolerances& tol) {
  FlowCache flow(path, tol);
  double w = rho_winding(flow, tol);
  double e = analyze_rho(flow.endpoint(), tol).endpoint_corr;
  double x = (w + e) / M_PI;
  long mu = std::lround(x);
  if (std::abs(x - static_cast<double>(mu)) > 0.35)
    throw CrossingResolutionFailure(
        "winding count is not close to an integer: " + std::to_string(x));
  return static_cast<int>(mu);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

std::string HalfInt::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

HalfInt rs_index(const SymplecticPath& path, const Tolerances& tol) {
  auto cs = detail::twisted_crossing_sum(path, cd(1.0, 0.0), tol);
  return HalfInt{cs.twice_rs()};
}

int cz_index(const SymplecticPath& path, const Tolerances& tol) {
  auto cs = detail::twisted_crossing_sum(path, cd(1.0, 0.0), tol);
  if (cs.crossing_t1)
    throw DegenerateEndpoint("ker(Gamma(1) - Id) is non-trivial");
  int twice = cs.sig_t0 + 2 * cs.interior_sum;
  if (twice % 2 != 0)
    throw CrossingResolutionFailure(
        "crossing sum has odd parity; a crossing was missed or misweighted");
  int mu_a = twice / 2;
  int mu_b = cz_by_winding(path, tol);
  if (mu_a != mu_b)
    throw CrossingResolutionFailure(
        "index engines disagree: crossing=" + std::to_string(mu_a) +
        " winding=" + std::to_string(mu_b));
  return mu_a;
}

int cz_minus(const SymplecticPath& path, const Tolerances& tol) {
  Mat g1 = integrate_generator(path, 1.0, tol);

  // Fast path: when ker(Gamma(1) - Id) is empty with margin, no crossing can
  // enter (0, 1] as eps -> 0, so the lower extension equals the plain index
  // and one direct evaluation suffices. Any engine refusal falls back to the
  // perturbation ladder below.
  {
    Mat shifted = g1 - Mat::Identity(g1.rows(), g1.cols());
    Eigen::JacobiSVD<Mat> svd(shifted);
    const double margin = std::max(
        1e-4, 20.0 * tol.eig_tol * std::max(1.0, g1.operatorNorm()));
    if (svd.singularValues().minCoeff() > margin) {
      try {
        return cz_index(path, tol);
      } catch (const Error&) {
      }
    }
  }

  double eps = detail::select_epsilon(g1, tol);
  std::optional<int> prev;
  // The starting eps protects the endpoint spectrum, but on iterates the
  // interior crossings only regain their full-rank kernels once eps falls
  // well below the endpoint-gap scale, so sweep down to the noise floor,
  // descending faster through epsilons the engines reject outright.
  for (int level = 0; level < 30 && eps >= 1e-12; ++level) {
    std::optional<int> value;
    try {
      value = cz_index(perturbed(path, eps), tol);
    } catch (const Error&) {
      // unlucky eps (endpoint hit or unresolved crossing)
    }
    if (value && prev && *value == *prev) return *value;
    prev = value;
    eps *= value ? 0.5 : 0.125;
  }
  throw EpsilonSelectionFailure(
      "no epsilon with a stable perturbed index above machine precision");
}

int cz_plus(const SymplecticPath& path, const Tolerances& tol) {
  return -cz_minus(inverse_path(path, tol), tol);
}

double mean_index(const SymplecticPath& path, int k_max,
                  const Tolerances& tol) {
  if (k_max < 4) throw std::invalid_argument("mean_index needs k_max >= 4");
  const int n = path.n();
  const int k1 = std::max(1, k_max / 4);
  const int k2 = std::max(2, k_max / 2);
  const int k3 = k_max;

  std::vector<int> ks{1, k1, k2, k3};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<std::pair<int, int>> mu;  // (k, cz_minus of k-th iterate)
  for (int k : ks) mu.push_back({k, cz_minus(iterate_path(path, k), tol)});

  auto mu_of = [&](int k) {
    for (auto& [kk, m] : mu)
      if (kk == k) return m;
    return 0;  // unreachable
  };
  double x1 = static_cast<double>(mu_of(k1)) / k1;
  double x2 = static_cast<double>(mu_of(k2)) / k2;
  double x3 = static_cast<double>(mu_of(k3)) / k3;

  // two elimination levels of the O(1/k) error term
  double y23 = (k3 * x3 - k2 * x2) / static_cast<double>(k3 - k2);
  double y12 = (k2 * x2 - k1 * x1) / static_cast<double>(k2 - k1);
  double est = (static_cast<double>(k3) * k3 * y23 -
                static_cast<double>(k2) * k2 * y12) /
               (static_cast<double>(k3) * k3 - static_cast<double>(k2) * k2);

  // exact enclosure from |mu_k - k Delta| <= n, intersected over all k
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (auto& [k, m] : mu) {
    lo = std::max(lo, (static_cast<double>(m) - n) / k);
    hi = std::min(hi, (static_cast<double>(m) + n) / k);
  }
  if (lo > hi + 1e-12)
    throw CrossingResolutionFailure(
        "mean-index enclosures are inconsistent across iterates");
  double mid = 0.5 * (lo + hi), width = std::max(0.0, hi - lo);
  double slack = std::max(0.0, static_cast<double>(n) / k_max - 0.5 * width);
  return std::clamp(est, mid - slack, mid + slack);
}

int spectral_flow_index(const SymplecticPath& path, int fourier_modes,
                        const Tolerances& tol) {
  (void)tol;
  const int n = path.n();
  if (fourier_modes < 8 * n)
    throw std::invalid_argument("spectral_flow_index needs >= 8n modes");
  const int mm = fourier_modes;
  const int d = 2 * n;

  // Fourier coefficients of the generator by composite Simpson
  const int panels = 4096;
  std::vector<Mat> samples(panels + 1);
  for (int i = 0; i <= panels; ++i)
    samples[i] = path.generator_at(static_cast<double>(i) / panels);
  std::vector<CMat> ahat(2 * mm + 1);
  for (int k = 0; k <= 2 * mm; ++k) {
    CMat acc = CMat::Zero(d, d);
    for (int i = 0; i <= panels; ++i) {
      double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      double t = static_cast<double>(i) / panels;
      acc += w * std::polar(1.0, -2.0 * M_PI * k * t) *
             samples[i].cast<cd>();
    }
    ahat[k] = acc / (3.0 * panels);
  }

  const int dim = d * (2 * mm + 1);
  CMat h = CMat::Zero(dim, dim);
  const CMat j0c = standard_J(n).cast<cd>();
  for (int r = -mm; r <= mm; ++r) {
    for (int c = -mm; c <= mm; ++c) {
      int k = r - c;
      CMat block = (k >= 0) ? ahat[k] : ahat[-k].conjugate();
      CMat entry = -block;
      if (r == c) entry += cd(0.0, -2.0 * M_PI * r) * j0c;
      h.block(d * (r + mm), d * (c + mm), d, d) = entry;
    }
  }

  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("Fourier operator eigenvalues did not converge");
  const double hscale = std::max(1.0, 2.0 * M_PI * mm);
  const double noise = 1e-9 * hscale;
  const double macro = 1e-6 * hscale;
  int neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < -macro)
      ++neg;
    else if (lam < -noise)
      throw ContinuationAmbiguity(
          "eigenvalue too close to zero to label its branch: " +
          std::to_string(lam));
  }
  return neg - (2 * mm * n + n);
}

IndexReport index_report(const SymplecticPath& path, int mean_k_max,
                         const Tolerances& tol) {
  IndexReport rep;
  rep.mu_rs = rs_index(path, tol);
  rep.mu_minus = cz_minus(path, tol);
  rep.mu_plus = cz_plus(path, tol);
  rep.mean = mean_index(path, mean_k_max, tol);
  Mat g1 = integrate_generator(path, 1.0, tol);
  rep.nullity = kernel_dimension(g1, cd(1.0, 0.0), tol.eig_tol);
  rep.nondegenerate = (rep.nullity == 0);
  return rep;
}

IndexReport apply_trivialization_shift(const IndexReport& report,
                                       const TrivializationShift& shift) {
  IndexReport out = report;
  out.mu_rs.twice += 4 * shift.maslov;
  out.mu_minus += 2 * shift.maslov;
  out.mu_plus += 2 * shift.maslov;
  out.mean += 2.0 * shift.maslov;
  return out;
}

}  // namespace reebindex
