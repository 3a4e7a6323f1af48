// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "reebindex/sympath.hpp"

#include <algorithm>
#include <cmath>

namespace reebindex {

Mat standard_J(int n) {
  Mat J = Mat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return J;
}

double symplectic_defect(const Mat& M) {
  const int n = static_cast<int>(M.rows()) / 2;
  Mat J = standard_J(n);
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& M, double tol) {
  return M.rows() == M.cols() && M.rows() % 2 == 0 &&
         symplectic_defect(M) <= tol;
}

Mat project_symplectic(const Mat& M, int sweeps) {
  const int n = static_cast<int>(M.rows()) / 2;
  Mat J = standard_J(n);
  Mat R = M;
  for (int s = 0; s < sweeps; ++s) {
    Mat E = R.transpose() * J * R - J;
    if (E.cwiseAbs().maxCoeff() < 1e-15) break;
    R = R * (Mat::Identity(2 * n, 2 * n) + 0.5 * J * E);
  }
  return R;
}

// ---------------------------------------------------------------------------
// SymplecticPath
// ---------------------------------------------------------------------------

SymplecticPath::SymplecticPath(int n, std::vector<double> times,
                               std::vector<Mat> generators,
                               double symmetry_tol)
    : n_(n), times_(std::move(times)), gens_(std::move(generators)) {
  if (n_ <= 0) throw std::invalid_argument("half-dimension must be positive");
  if (times_.size() < 2 || times_.size() != gens_.size())
    throw std::invalid_argument("need matching time/generator samples");
  if (times_.front() != 0.0 || times_.back() != 1.0)
    throw std::invalid_argument("path must be parameterized over [0,1]");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (times_[i] < times_[i - 1])
      throw std::invalid_argument("sample times must be non-decreasing");

  seg_begin_.push_back(0);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Mat& A = gens_[i];
    if (A.rows() != 2 * n_ || A.cols() != 2 * n_)
      throw std::invalid_argument("generator dimension mismatch");
    double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol)
      throw NonSymmetricGenerator("generator sample " + std::to_string(i) +
                                  " has asymmetry " + std::to_string(asym));
    gens_[i] = 0.5 * (A + A.transpose());
    gen_bound_ = std::max(gen_bound_, gens_[i].operatorNorm());
    if (i + 1 < times_.size() && times_[i + 1] == times_[i])
      seg_begin_.push_back(static_cast<int>(i + 1));
  }
}

SymplecticPath SymplecticPath::constant(int n, const Mat& A) {
  return SymplecticPath(n, {0.0, 1.0}, {A, A});
}

SymplecticPath SymplecticPath::rotation(int n, const Vec& angles) {
  Mat A = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    A(j, j) = angles[j];
    A(n + j, n + j) = angles[j];
  }
  return constant(n, A);
}

int SymplecticPath::segment_of(double t) const {
  // Last segment whose begin time is <= t. Seam knots belong to the segment
  // they open, except t = 1 which resolves to the final one.
  int seg = 0;
  for (std::size_t s = 1; s < seg_begin_.size(); ++s) {
    if (times_[seg_begin_[s]] <= t) seg = static_cast<int>(s);
  }
  return seg;
}

Mat SymplecticPath::generator_at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const int seg = segment_of(t);
  const int lo = seg_begin_[seg];
  const int hi = (seg + 1 < static_cast<int>(seg_begin_.size()))
                     ? seg_begin_[seg + 1] - 1
                     : static_cast<int>(times_.size()) - 1;
  if (lo == hi) return gens_[lo];

  int i = lo;
  while (i < hi - 1 && times_[i + 1] <= t) ++i;
  const double t0 = times_[i], t1 = times_[i + 1];
  const double h = t1 - t0;
  if (h <= 0.0) return gens_[i];
  const double u = (t - t0) / h;

  // Catmull-Rom within the segment; one-sided differences at its ends.
  const Mat& P1 = gens_[i];
  const Mat& P2 = gens_[i + 1];
  Mat D1 = (i > lo) ? ((P2 - gens_[i - 1]) / (times_[i + 1] - times_[i - 1]))
                    : ((P2 - P1) / h);
  Mat D2 = (i + 1 < hi)
               ? ((gens_[i + 2] - P1) / (times_[i + 2] - times_[i]))
               : ((P2 - P1) / h);
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * P1 + (u3 - 2 * u2 + u) * h * D1 +
         (-2 * u3 + 3 * u2) * P2 + (u3 - u2) * h * D2;
}

SymplecticPath direct_sum(const SymplecticPath& a, const SymplecticPath& b) {
  const int na = a.n(), nb = b.n(), n = na + nb;
  // merged time grid, duplicated knots preserved from either factor
  std::vector<double> ts;
  ts.reserve(a.times().size() + b.times().size());
  std::merge(a.times().begin(), a.times().end(), b.times().begin(),
             b.times().end(), std::back_inserter(ts));
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double x, double y) { return x == y; }),
           ts.end());
  // re-introduce seams present in either path
  std::vector<double> seams;
  auto collect = [&](const SymplecticPath& p) {
    for (std::size_t i = 1; i < p.times().size(); ++i)
      if (p.times()[i] == p.times()[i - 1]) seams.push_back(p.times()[i]);
  };
  collect(a);
  collect(b);
  std::sort(seams.begin(), seams.end());
  seams.erase(std::unique(seams.begin(), seams.end()), seams.end());
  for (double s : seams) {
    auto it = std::lower_bound(ts.begin(), ts.end(), s);
    ts.insert(it, s);
  }

  std::vector<Mat> gens;
  gens.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    // at a duplicated knot, the first copy carries the left limit and the
    // second the right limit
    double t = ts[i];
    double tq = t;
    if (i + 1 < ts.size() && ts[i + 1] == t) tq = std::nextafter(t, -1.0);
    if (i > 0 && ts[i - 1] == t) tq = std::nextafter(t, 2.0);
    Mat Aa = a.generator_at(std::clamp(tq, 0.0, 1.0)),
        Ab = b.generator_at(std::clamp(tq, 0.0, 1.0));
    Mat A = Mat::Zero(2 * n, 2 * n);
    A.block(0, 0, na, na) = Aa.block(0, 0, na, na);
    A.block(0, n, na, na) = Aa.block(0, na, na, na);
    A.block(n, 0, na, na) = Aa.block(na, 0, na, na);
    A.block(n, n, na, na) = Aa.block(na, na, na, na);
    A.block(na, na, nb, nb) = Ab.block(0, 0, nb, nb);
    A.block(na, n + na, nb, nb) = Ab.block(0, nb, nb, nb);
    A.block(n + na, na, nb, nb) = Ab.block(nb, 0, nb, nb);
    A.block(n + na, n + na, nb, nb) = Ab.block(nb, nb, nb, nb);
    gens.push_back(A);
  }
  return SymplecticPath(n, std::move(ts), std::move(gens));
}

SymplecticPath loop_composed(const SymplecticPath& p, int maslov) {
  // phi(t) rotates plane 1 by 2*pi*maslov*t; phi commutes with J0, so the
  // composed generator is A_phi + phi A phi^T.
  const int n = p.n();
  const double w = 2.0 * M_PI * maslov;
  Mat Aphi = Mat::Zero(2 * n, 2 * n);
  Aphi(0, 0) = w;
  Aphi(n, n) = w;

  // Sample densely enough for the oscillatory conjugation, preserving seams.
  // Cubic resampling error scales like (w / m)^4, so keep m proportional to
  // the loop frequency.
  int m = std::max(512, 384 * (std::abs(maslov) + 1));
  std::vector<double> ts = p.times();
  for (int i = 0; i <= m; ++i) {
    double u = static_cast<double>(i) / m;
    if (!std::binary_search(p.times().begin(), p.times().end(), u))
      ts.push_back(u);
  }
  std::sort(ts.begin(), ts.end());

  std::vector<Mat> gens;
  gens.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double t = ts[i];
    double tq = t;
    if (i + 1 < ts.size() && ts[i + 1] == t) tq = std::nextafter(t, -1.0);
    if (i > 0 && ts[i - 1] == t) tq = std::nextafter(t, 2.0);
    double c = std::cos(w * t), s = std::sin(w * t);
    Mat phi = Mat::Identity(2 * n, 2 * n);
    phi(0, 0) = c;
    phi(0, n) = -s;
    phi(n, 0) = s;
    phi(n, n) = c;
    Mat A = Aphi + phi * p.generator_at(std::clamp(tq, 0.0, 1.0)) *
                       phi.transpose();
    gens.push_back(0.5 * (A + A.transpose()));
  }
  return SymplecticPath(n, std::move(ts), std::move(gens));
}

SymplecticPath perturbed(const SymplecticPath& p, double eps) {
  std::vector<Mat> gens = p.generators();
  for (Mat& A : gens) A -= eps * Mat::Identity(A.rows(), A.cols());
  return SymplecticPath(p.n(), p.times(), std::move(gens));
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

namespace {

// Runge-Kutta-Fehlberg 4(5) on Gamma' = J0 A(t) Gamma.
struct Rkf45 {
  const SymplecticPath& path;
  const Mat J;
  const Tolerances tol;

  Mat deriv(double t, const Mat& G) const {
    return J * path.generator_at(t) * G;
  }

  // One adaptive step from (t, G); updates t, G, h. Returns false if the
  // proposed step was rejected (h already shrunk).
  bool step(double& t, Mat& G, double& h, double t_end) const {
    if (t + h > t_end) h = t_end - t;
    const Mat k1 = deriv(t, G);
    const Mat k2 = deriv(t + h / 4.0, G + h / 4.0 * k1);
    const Mat k3 = deriv(t + 3.0 * h / 8.0,
                         G + h * (3.0 / 32 * k1 + 9.0 / 32 * k2));
    const Mat k4 = deriv(t + 12.0 * h / 13.0,
                         G + h * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 +
                                  7296.0 / 2197 * k3));
    const Mat k5 =
        deriv(t + h, G + h * (439.0 / 216 * k1 - 8.0 * k2 +
                              3680.0 / 513 * k3 - 845.0 / 4104 * k4));
    const Mat k6 = deriv(
        t + h / 2.0, G + h * (-8.0 / 27 * k1 + 2.0 * k2 - 3544.0 / 2565 * k3 +
                              1859.0 / 4104 * k4 - 11.0 / 40 * k5));
    const Mat G4 = G + h * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 +
                            2197.0 / 4104 * k4 - 1.0 / 5 * k5);
    const Mat G5 = G + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 +
                            28561.0 / 56430 * k4 - 9.0 / 50 * k5 +
                            2.0 / 55 * k6);
    const double err = (G5 - G4).cwiseAbs().maxCoeff();
    const double scale = 1e-12 * std::max(1.0, G.cwiseAbs().maxCoeff());
    if (err > scale && h > 1e-14) {
      h *= std::max(0.1, 0.84 * std::pow(scale / std::max(err, 1e-300), 0.25));
      return false;
    }
    t += h;
    G = G5;
    if (err > 0.0)
      h = std::min(0.25, h * std::min(4.0, 0.84 * std::pow(scale / err, 0.2)));
    else
      h = std::min(0.25, 4.0 * h);
    return true;
  }
};

}  // namespace

static void integrate_span(const SymplecticPath& path, const Tolerances& tol,
                           double t0, const Mat& G0, double t1, Mat& out,
                           std::vector<double>* knot_t,
                           std::vector<Mat>* knot_m) {
  const int n = path.n();
  Rkf45 rk{path, standard_J(n), tol};
  double t = t0;
  Mat G = G0;
  double h = std::min(0.1, 0.5 / std::max(1.0, path.generator_bound()));
  // never step across a sample knot, so seams stay sharp
  const auto& ts = path.times();
  long guard = 0;
  while (t < t1 - 1e-15) {
    auto it = std::upper_bound(ts.begin(), ts.end(), t + 1e-15);
    double wall = (it == ts.end()) ? t1 : std::min(*it, t1);
    double hh = std::min(h, wall - t);
    if (rk.step(t, G, hh, wall)) {
      h = hh;
      if (symplectic_defect(G) > tol.symplectic_tol / 10.0)
        G = project_symplectic(G);
      if (knot_t) {
        knot_t->push_back(t);
        knot_m->push_back(G);
      }
    } else {
      h = hh;
    }
    if (++guard > 2000000)
      throw IntegrationDivergence("step control failed to reach t=" +
                                  std::to_string(t1));
  }
  out = G;
}

Mat integrate_generator(const SymplecticPath& path, double t,
                        const Tolerances& tol) {
  if (t < 0.0 || t > 1.0)
    throw std::invalid_argument("time outside [0,1]");
  const int d = path.dim();
  Mat G = Mat::Identity(d, d);
  if (t == 0.0) return G;
  Mat out;
  integrate_span(path, tol, 0.0, G, t, out, nullptr, nullptr);
  return out;
}

FlowCache::FlowCache(const SymplecticPath& path, const Tolerances& tol)
    : path_(path), tol_(tol) {
  const int d = path.dim();
  knots_t_.push_back(0.0);
  knots_m_.push_back(Mat::Identity(d, d));
  Mat out;
  integrate_span(path_, tol_, 0.0, knots_m_.front(), 1.0, out, &knots_t_,
                 &knots_m_);
  if (knots_t_.back() != 1.0) {
    knots_t_.push_back(1.0);
    knots_m_.push_back(out);
  }
  double gap = 0.0;
  for (std::size_t i = 1; i < knots_t_.size(); ++i)
    gap = std::max(gap, knots_t_[i] - knots_t_[i - 1]);
  double knot_max = 1.0;
  for (const Mat& m : knots_m_)
    knot_max = std::max(knot_max, m.operatorNorm());
  max_norm_ = knot_max * std::exp(path.generator_bound() * gap);
}

Mat FlowCache::at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - knots_t_.begin()) - 1;
  if (knots_t_[i] == t) return knots_m_[i];
  Mat out;
  integrate_span(path_, tol_, knots_t_[i], knots_m_[i], t, out, nullptr,
                 nullptr);
  return out;
}

SymplecticPath iterate_path(const SymplecticPath& path, int k) {
  if (k < 1) throw std::invalid_argument("iterate must be >= 1");
  if (k == 1) return path;
  const auto& ts = path.times();
  const auto& As = path.generators();
  std::vector<double> nts;
  std::vector<Mat> ngens;
  nts.reserve(k * ts.size());
  ngens.reserve(k * ts.size());
  for (int j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      nts.push_back((ts[i] + j) / k);
      ngens.push_back(static_cast<double>(k) * As[i]);
    }
  }
  return SymplecticPath(path.n(), std::move(nts), std::move(ngens));
}

SymplecticPath inverse_path(const SymplecticPath& path,
                            const Tolerances& tol) {
  FlowCache flow(path, tol);
  // keep original knots (and seams) and refine in between
  std::vector<double> ts;
  const auto& base = path.times();
  const int refine = 16;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    ts.push_back(base[i]);
    for (int r = 1; r < refine; ++r) {
      double t = base[i] + (base[i + 1] - base[i]) * r / refine;
      if (t > base[i] && t < base[i + 1]) ts.push_back(t);
    }
  }
  ts.push_back(1.0);
  std::vector<Mat> gens;
  gens.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double t = ts[i];
    double tq = t;
    if (i + 1 < ts.size() && ts[i + 1] == t) tq = std::nextafter(t, -1.0);
    if (i > 0 && ts[i - 1] == t) tq = std::nextafter(t, 2.0);
    Mat G = flow.at(t);
    Mat A = path.generator_at(std::clamp(tq, 0.0, 1.0));
    Mat B = -G.transpose() * A * G;
    gens.push_back(0.5 * (B + B.transpose()));
  }
  return SymplecticPath(path.n(), std::move(ts), std::move(gens));
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

int kernel_dimension(const Mat& M, std::complex<double> z, double eig_tol) {
  const int d = static_cast<int>(M.rows());
  CMat B = M.cast<std::complex<double>>() -
           z * CMat::Identity(d, d);
  Eigen::JacobiSVD<CMat> svd(B);
  const double thresh = eig_tol * std::max(1.0, M.operatorNorm());
  int k = 0;
  for (int i = 0; i < d; ++i)
    if (svd.singularValues()[i] < thresh) ++k;
  return k;
}

SpectralClassification classify_spectrum(const Mat& M, const Tolerances& tol) {
  const int d = static_cast<int>(M.rows());
  Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenSolverFailure("eigenvalue iteration did not converge");
  std::vector<std::complex<double>> evs(d);
  for (int i = 0; i < d; ++i) evs[i] = es.eigenvalues()[i];
  std::sort(evs.begin(), evs.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  SpectralClassification out;
  const double scale = std::max(1.0, M.operatorNorm());
  const double cluster_radius = 50.0 * tol.eig_tol * scale;
  std::size_t i = 0;
  while (i < evs.size()) {
    std::size_t j = i + 1;
    std::complex<double> sum = evs[i];
    while (j < evs.size() && std::abs(evs[j] - evs[j - 1]) < cluster_radius) {
      sum += evs[j];
      ++j;
    }
    SpectralClassification::Eigenvalue e;
    e.z = sum / static_cast<double>(j - i);
    e.alg = static_cast<int>(j - i);
    e.geo = kernel_dimension(M, e.z, tol.eig_tol);
    out.eigenvalues.push_back(e);
    i = j;
  }

  out.elliptic = true;
  for (const auto& e : out.eigenvalues)
    if (std::abs(std::abs(e.z) - 1.0) > tol.eig_tol) out.elliptic = false;
  out.nullity = kernel_dimension(M, 1.0, tol.eig_tol);
  return out;
}

}  // namespace reebindex
