// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "crossing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace reebindex::detail {

namespace {

using cd = std::complex<double>;

/// Number of singular values of (G - z Id) below thr.
int count_small_singulars(const Mat& G, cd z, double thr) {
  CMat B = G.cast<cd>();
  B.diagonal().array() -= z;
  Eigen::JacobiSVD<CMat> svd(B);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i) {
    if (sv[i] < thr)
      ++k;
    else
      break;
  }
  return k;
}

/// The (skip+1)-th smallest singular value of (G - z Id); +inf when skip
/// swallows the whole spectrum. Skipping a persistent kernel keeps the scan
/// functional bounded away from zero between genuine crossings.
double deflated_sigma(const Mat& G, cd z, int skip) {
  CMat B = G.cast<cd>();
  B.diagonal().array() -= z;
  Eigen::JacobiSVD<CMat> svd(B);
  const auto& sv = svd.singularValues();
  int idx = static_cast<int>(sv.size()) - 1 - skip;
  if (idx < 0) return std::numeric_limits<double>::infinity();
  return sv[idx];
}

CMat kernel_basis_thr(const Mat& M, cd z, double thr) {
  CMat B = M.cast<cd>();
  B.diagonal().array() -= z;
  Eigen::JacobiSVD<CMat> svd(B, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i) {
    if (sv[i] < thr)
      ++k;
    else
      break;
  }
  return svd.matrixV().rightCols(k);
}

/// Golden-section minimization of f over [a, b] down to width tolw.
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tolw) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int guard = 200;
  while (b - a > tolw && guard-- > 0) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  double tm = 0.5 * (a + b);
  return {tm, f(tm)};
}

}  // namespace

CMat kernel_basis(const Mat& M, cd z, const Tolerances& tol) {
  double thr = tol.eig_tol * std::max(1.0, M.operatorNorm());
  return kernel_basis_thr(M, z, thr);
}

int restricted_form_signature(const Mat& A, const CMat& K,
                              const Tolerances& tol) {
  if (K.cols() == 0) return 0;
  CMat H = K.adjoint() * A.cast<cd>() * K;
  H = 0.5 * (H + CMat(H.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("crossing form eigenvalues did not converge");
  double thr = tol.eig_tol * std::max(1.0, A.operatorNorm());
  int sig = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] > thr)
      ++sig;
    else if (es.eigenvalues()[i] < -thr)
      --sig;
  }
  return sig;
}

double select_epsilon(const Mat& endpoint, const Tolerances& tol) {
  Eigen::EigenSolver<Mat> es(endpoint, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("endpoint spectrum did not converge");
  double scale = 1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    scale = std::max(scale, std::abs(es.eigenvalues()[i]));

  const double band = std::max(100.0 * tol.eig_tol, 1e-6) * scale;
  std::vector<double> args{0.0};
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    cd lam = es.eigenvalues()[i];
    if (std::abs(std::abs(lam) - 1.0) > band) continue;
    double th = std::arg(lam);
    if (th < 0) th += 2.0 * M_PI;
    args.push_back(th);
  }
  std::sort(args.begin(), args.end());
  // Merge angles at integrator-noise resolution, including across the 0 / 2pi
  // seam; otherwise a nearly-identity endpoint reports a spurious tiny gap.
  args.erase(std::unique(args.begin(), args.end(),
                         [](double a, double b) { return b - a < 1e-8; }),
             args.end());
  if (args.size() > 1 && 2.0 * M_PI - args.back() + args.front() < 1e-8)
    args.pop_back();
  double gap = 2.0 * M_PI;
  for (std::size_t i = 1; i < args.size(); ++i)
    gap = std::min(gap, args[i] - args[i - 1]);
  if (args.size() > 1)
    gap = std::min(gap, 2.0 * M_PI - args.back() + args.front());
  return std::clamp(gap / (4.0 * M_PI), 1e-7, 1e-3);
}

CrossingSum twisted_crossing_sum(const SymplecticPath& path, cd z,
                                 const Tolerances& tol) {
  FlowCache flow(path, tol);
  const double gmax = flow.max_norm();
  const double scale = std::max(1.0, gmax);
  // Multiplicative Gronwall certificate: Gamma(u) = Phi(u,t) Gamma(t) with
  // ||Phi - Id|| <= e^{g h} - 1, so sigma(u) >= (1 - d) sigma(t) - d for
  // d = e^{g h} - 1 and |z| = 1. Unlike the additive bound this does not see
  // the flow norm, which explodes on iterates of hyperbolic paths while
  // sigma stays tame. Near a zero the same estimate gives |sigma| <= 1.3 g h.
  const double gbound = std::max(path.generator_bound(), 1e-3);
  const double slope = 1.3 * gbound;
  const double thr_scan = tol.eig_tol * scale;
  const double golden_width = 1e-10;
  // a crossing located to golden_width still sits at sigma ~ slope * width
  const double thr_kernel = std::max(thr_scan, 4.0 * slope * golden_width);
  const double activation = std::max(200.0 * thr_kernel, 1e-6 * scale);
  const double h_dip = std::max(activation / (2.0 * slope), 1e-9);

  CrossingSum out;

  // t = 0: Gamma(0) = Id crosses exactly when z = 1.
  if (std::abs(cd(1.0, 0.0) - z) <= thr_kernel) {
    out.crossing_t0 = true;
    CMat full = CMat::Identity(path.dim(), path.dim());
    out.sig_t0 = restricted_form_signature(path.generator_at(0.0), full, tol);
  }

  // t = 1, evaluated directly.
  {
    CMat k1 = kernel_basis_thr(flow.endpoint(), z, thr_kernel);
    if (k1.cols() > 0) {
      out.crossing_t1 = true;
      out.sig_t1 =
          restricted_form_signature(path.generator_at(1.0), k1, tol);
    }
  }

  // Persistent kernel dimension: minimum kernel count over a coarse interior
  // grid. A constant-rank degenerate band carries a vanishing crossing form,
  // so deflating it is exact, and it unblinds the scan for real dips.
  int deflate = path.dim();
  for (int i = 1; i <= 61 && deflate > 0; ++i) {
    double t = static_cast<double>(i) / 62.0;
    deflate = std::min(deflate, count_small_singulars(flow.at(t), z, thr_scan));
  }

  auto sigma = [&](double t) { return deflated_sigma(flow.at(t), z, deflate); };

  const double t_end = 1.0 - 1e-8;
  double t = 1e-8;
  long budget = 200000;
  auto spend = [&](long k = 1) {
    budget -= k;
    if (budget < 0)
      throw CrossingResolutionFailure(
          "crossing scan exceeded its evaluation budget");
  };

  if (out.crossing_t0) {
    // escape the t = 0 dip by geometric probing
    while (t < t_end) {
      spend();
      if (sigma(t) > activation) break;
      t = std::min(2.0 * t, t + 1e-4);
    }
  }

  double last_certified = t;
  std::vector<Crossing> found;

  while (t < t_end) {
    spend();
    double s = sigma(t);
    if (s > activation) {
      last_certified = t;
      // a zero within h would need e^{g h} - 1 >= s / (1 + s)
      t += std::max(0.8 * std::log1p(s / (1.0 + s)) / gbound, 1e-7);
      continue;
    }

    // Inside a dip. Sample it wall to wall at resolution h_dip; the walls are
    // certified crossing-free, so every zero in here shows up as a sampled
    // local minimum.
    std::vector<double> ts_dip, ss_dip;
    double u = std::max(last_certified, t - 2.0 * h_dip);
    int cap = 6000;
    while (cap-- > 0) {
      spend();
      double su = sigma(u);
      ts_dip.push_back(u);
      ss_dip.push_back(su);
      if (u >= t_end) break;
      if (u > t && su > activation) break;
      u = std::min(u + h_dip, t_end);
    }
    if (cap <= 0)
      throw CrossingResolutionFailure(
          "degenerate band too wide to sample at dip resolution");

    for (std::size_t i = 0; i < ts_dip.size(); ++i) {
      bool left_ok = (i == 0) || ss_dip[i] <= ss_dip[i - 1];
      bool right_ok = (i + 1 == ts_dip.size()) || ss_dip[i] <= ss_dip[i + 1];
      if (!(left_ok && right_ok && ss_dip[i] <= activation)) continue;
      double a = (i == 0) ? std::max(last_certified, ts_dip[0] - h_dip)
                          : ts_dip[i - 1];
      double b = (i + 1 == ts_dip.size()) ? std::min(t_end, ts_dip[i] + h_dip)
                                          : ts_dip[i + 1];
      spend(40);
      auto [tc, sc] = golden_min(sigma, a, b, golden_width);
      // A degenerate endpoint bleeds sigma below the gray threshold within a
      // couple of dip steps of the wall. Its contribution is evaluated
      // directly at t = 1 above, so minima pinned there are not crossings.
      bool endpoint_dip = out.crossing_t1 && tc >= t_end - 2.0 * h_dip;
      if (sc <= thr_kernel) {
        if (endpoint_dip) continue;
        CMat kb = kernel_basis_thr(flow.at(tc), z,
                                   std::max(thr_kernel, 2.0 * sc));
        Crossing c;
        c.t = tc;
        c.kernel_dim = static_cast<int>(kb.cols());
        c.signature =
            restricted_form_signature(path.generator_at(tc), kb, tol);
        found.push_back(c);
      } else if (sc < 8.0 * thr_kernel) {
        if (endpoint_dip) continue;
        throw CrossingResolutionFailure(
            "near-degenerate dip at t=" + std::to_string(tc) +
            " cannot be classified at tolerance");
      }
    }

    last_certified = ts_dip.back();
    t = ts_dip.back() + 1e-9;
  }

  // adjacent minima occasionally refine onto the same instant
  std::sort(found.begin(), found.end(),
            [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
  for (const Crossing& c : found) {
    if (!out.interior.empty() && c.t - out.interior.back().t < 2e-9) continue;
    out.interior.push_back(c);
    out.interior_sum += c.signature;
  }
  return out;
}

}  // namespace reebindex::detail
