// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT

#include "reebindex/toric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "reebindex/errors.hpp"

#include "linprog.hpp"

namespace reebindex {
namespace {

// ---------------------------------------------------------------------------
// Small exact-arithmetic helpers
// ---------------------------------------------------------------------------

std::string int_vec_str(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

std::string facet_set_str(const std::vector<int>& f) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << f[i];
  os << "}";
  return os.str();
}

BigInt dot_int(const IntVec& a, const IntVec& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QSqrt2 dot_ambient(const std::vector<QSqrt2>& a, const IntVec& b) {
  QSqrt2 s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * QSqrt2(Rational(b[i]));
  return s;
}

/// Selected facet normals as rational rows.
RatMat selected_rows(const MomentCone& cone, const std::vector<int>& idx) {
  RatMat rows;
  rows.reserve(idx.size());
  for (int j : idx) {
    RatVec r(cone.ambient_dim);
    for (int i = 0; i < cone.ambient_dim; ++i) r[i] = Rational(cone.normals[j][i]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Visit every k-subset of {0, ..., n - 1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k <= 0 || k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

/// Index contribution of one rotation number: 2x for integer x and
/// 2 floor(x) + 1 otherwise, both decided exactly.
BigInt rho_turns(const QSqrt2& x) {
  if (x.is_integer()) return 2 * numerator(x.rat);
  return 2 * floor_q(x) + 1;
}

void validate_cone_shape(const MomentCone& cone) {
  if (cone.ambient_dim < 2)
    throw std::invalid_argument("moment cone needs ambient dimension >= 2");
  if (cone.normals.empty())
    throw std::invalid_argument("moment cone has no facet normals");
  for (const auto& nu : cone.normals)
    if (static_cast<int>(nu.size()) != cone.ambient_dim)
      throw std::invalid_argument(
          "facet normal length differs from the ambient dimension");
}

void validate_reeb_shape(const MomentCone& cone, const ReebVector& reeb) {
  if (static_cast<int>(reeb.ambient.size()) != cone.ambient_dim)
    throw std::invalid_argument(
        "Reeb ambient vector length differs from the ambient dimension");
  if (static_cast<int>(reeb.coefficients.size()) != cone.facet_count())
    throw std::invalid_argument(
        "Reeb coefficient count differs from the facet count");
  for (const auto& a : reeb.coefficients)
    if (sgn(a) <= 0)
      throw std::invalid_argument("Reeb coefficients must be positive");
  for (int i = 0; i < cone.ambient_dim; ++i) {
    QSqrt2 s;
    for (int j = 0; j < cone.facet_count(); ++j)
      s += reeb.coefficients[j] * QSqrt2(Rational(cone.normals[j][i]));
    if (s != reeb.ambient[i])
      throw std::invalid_argument(
          "Reeb coefficients do not reproduce the ambient vector");
  }
}

/// Extreme rays of the cone with their active facet sets, deduplicated and
/// sorted by direction.  Each ray is the kernel of n independent normals,
/// kept when every facet value is nonnegative after orientation.
std::vector<FaceLattice::Edge> extreme_rays(const MomentCone& cone) {
  const int n = cone.n();
  const int d = cone.facet_count();
  std::map<IntVec, std::vector<int>> rays;
  for_each_subset(d, n, [&](const std::vector<int>& sub) {
    RatMat rows = selected_rows(cone, sub);
    if (rational_rank(rows) != n) return;
    RatVec v = kernel_vector(rows);
    int pos = 0;
    int neg = 0;
    for (int j = 0; j < d; ++j) {
      Rational val = 0;
      for (int i = 0; i < cone.ambient_dim; ++i)
        val += Rational(cone.normals[j][i]) * v[i];
      if (val > 0) ++pos;
      if (val < 0) ++neg;
    }
    if (pos > 0 && neg > 0) return;
    if (neg > 0)
      for (auto& x : v) x = -x;
    IntVec e = primitive_vector(v);
    std::vector<int> active;
    for (int j = 0; j < d; ++j)
      if (dot_int(e, cone.normals[j]) == 0) active.push_back(j);
    rays.emplace(std::move(e), std::move(active));
  });
  std::vector<FaceLattice::Edge> out;
  out.reserve(rays.size());
  for (auto& [dir, act] : rays) out.push_back({dir, act});
  return out;
}

/// Exact non-resonance test over the face cut out by the facets in act (act
/// empty means the whole cone).  Writing the ambient Reeb vector as
/// rho0 + sqrt(2) rho1 with rational rho0, rho1, the Reeb flow on the stratum
/// over the face is resonant exactly when the images of rho0 and rho1 in the
/// quotient by the active normals are dependent over Q; independence is a
/// rank condition.
bool face_nonresonant(const MomentCone& cone, const std::vector<int>& act,
                      const std::vector<QSqrt2>& ambient) {
  RatMat rows = selected_rows(cone, act);
  const int base_rank = rows.empty() ? 0 : rational_rank(rows);
  RatVec r0(cone.ambient_dim);
  RatVec r1(cone.ambient_dim);
  for (int i = 0; i < cone.ambient_dim; ++i) {
    r0[i] = ambient[i].rat;
    r1[i] = ambient[i].irr;
  }
  rows.push_back(std::move(r0));
  rows.push_back(std::move(r1));
  return rational_rank(rows) == base_rank + 2;
}

/// Worker count for the per-edge loops: hardware concurrency, optionally
/// capped by the REEB_INDEX_THREADS environment variable, never more than
/// the number of jobs.
int worker_count(int jobs) {
  if (jobs <= 1) return 1;
  const unsigned hw = std::thread::hardware_concurrency();
  int cap = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("REEB_INDEX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      cap = static_cast<int>(v);
  }
  return std::max(1, std::min(cap, jobs));
}

}  // namespace

// ---------------------------------------------------------------------------
// Face lattice and goodness
// ---------------------------------------------------------------------------

std::map<int, int> FaceLattice::counts_by_codim() const {
  std::map<int, int> out;
  for (const auto& f : faces) ++out[f.codim];
  return out;
}

FaceLattice check_good_cone(const MomentCone& cone) {
  validate_cone_shape(cone);
  const int n = cone.n();
  const int d = cone.facet_count();

  for (int j = 0; j < d; ++j)
    if (!is_primitive(cone.normals[j]))
      throw NonPrimitiveNormal("facet normal " + int_vec_str(cone.normals[j]) +
                               " at index " + std::to_string(j) +
                               " is not primitive");

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (cone.normals[i] == cone.normals[j])
        throw RedundantNormal("facet normals " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");

  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  if (rational_rank(selected_rows(cone, all)) != n + 1)
    throw NotStrictlyConvex(
        "the facet normals span a proper subspace, so the cone contains a "
        "line");

  FaceLattice lattice;
  lattice.edges = extreme_rays(cone);
  const int ecount = static_cast<int>(lattice.edges.size());

  // Every listed normal must support a genuine codimension-1 face, which is
  // exactly the condition that its extreme rays span a hyperplane of the
  // cone.  This also rules out superfluous halfspaces.
  for (int j = 0; j < d; ++j) {
    RatMat dirs;
    for (const auto& e : lattice.edges)
      if (std::find(e.active.begin(), e.active.end(), j) != e.active.end()) {
        RatVec r(cone.ambient_dim);
        for (int i = 0; i < cone.ambient_dim; ++i) r[i] = Rational(e.direction[i]);
        dirs.push_back(std::move(r));
      }
    if (rational_rank(dirs) != n)
      throw RedundantNormal("facet " + std::to_string(j) +
                            " is not a codimension-1 face of the cone");
  }

  for (const auto& e : lattice.edges)
    if (static_cast<int>(e.active.size()) != n)
      throw FaceFacetCountMismatch(
          "edge " + int_vec_str(e.direction) + " lies on " +
          std::to_string(e.active.size()) + " facets; a good cone has exactly " +
          std::to_string(n));

  // Assemble the proper faces from ray subsets.  The active set of a subset
  // of rays is the active set of the smallest face containing it, and the
  // face dimension is the rank of all rays sharing that active set, so the
  // map below is keyed by genuine face data.
  std::map<std::vector<int>, int> face_codim;
  for (int size = 1; size <= std::min(ecount, n + 1); ++size) {
    for_each_subset(ecount, size, [&](const std::vector<int>& sub) {
      std::vector<int> act = lattice.edges[sub[0]].active;
      for (std::size_t s = 1; s < sub.size(); ++s) {
        std::vector<int> next;
        std::set_intersection(act.begin(), act.end(),
                              lattice.edges[sub[s]].active.begin(),
                              lattice.edges[sub[s]].active.end(),
                              std::back_inserter(next));
        act = std::move(next);
      }
      if (act.empty() || face_codim.count(act)) return;
      RatMat dirs;
      for (const auto& e : lattice.edges)
        if (std::includes(e.active.begin(), e.active.end(), act.begin(),
                          act.end())) {
          RatVec r(cone.ambient_dim);
          for (int i = 0; i < cone.ambient_dim; ++i)
            r[i] = Rational(e.direction[i]);
          dirs.push_back(std::move(r));
        }
      const int codim = n + 1 - rational_rank(dirs);
      if (codim < 1 || codim > n) return;
      face_codim.emplace(std::move(act), codim);
    });
  }

  for (const auto& [act, codim] : face_codim)
    if (static_cast<int>(act.size()) != codim)
      throw FaceFacetCountMismatch(
          "the codimension-" + std::to_string(codim) + " face on facets " +
          facet_set_str(act) + " lies on " + std::to_string(act.size()) +
          " facets");

  for (const auto& [act, codim] : face_codim) {
    IntMat sub;
    for (int j : act) sub.push_back(cone.normals[j]);
    const IntVec inv = snf_invariants(sub);
    BigInt index = 1;
    for (const auto& x : inv) index *= x;
    if (index != 1)
      throw NotIntegralBasisCompletable(
          "the normals through the face on facets " + facet_set_str(act) +
          " span a sublattice of index " + index.str() +
          "; they do not extend to an integral basis");
  }

  lattice.faces.reserve(face_codim.size());
  for (const auto& [act, codim] : face_codim)
    lattice.faces.push_back({act, codim});
  std::sort(lattice.faces.begin(), lattice.faces.end(),
            [](const FaceLattice::Face& a, const FaceLattice::Face& b) {
              return std::tie(a.codim, a.facets) < std::tie(b.codim, b.facets);
            });
  return lattice;
}

std::vector<BigInt> fundamental_group(const MomentCone& cone) {
  check_good_cone(cone);
  const IntVec inv = snf_invariants(cone.normals);
  std::vector<BigInt> out;
  for (const auto& x : inv)
    if (x != 1) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Reeb vectors
// ---------------------------------------------------------------------------

ReebVector is_reeb_vector(const MomentCone& cone,
                          const std::vector<QSqrt2>& v) {
  check_good_cone(cone);
  const int n1 = cone.ambient_dim;
  const int d = cone.facet_count();
  if (static_cast<int>(v.size()) != n1)
    throw std::invalid_argument("vector length differs from the ambient dimension");

  // Decompose v = sum_j a_j nu_j with the smallest coefficient maximal:
  // substitute a_j = u_j + t, u_j >= 0, t = t+ - t-, and maximize t.  The
  // program is bounded for a good cone and the Bland rule makes the witness
  // deterministic, which downstream tables rely on.
  std::vector<QSqrt2> sigma(n1);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n1; ++i) sigma[i] += QSqrt2(Rational(cone.normals[j][i]));
  std::vector<std::vector<QSqrt2>> A(n1, std::vector<QSqrt2>(d + 2));
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < d; ++j) A[i][j] = QSqrt2(Rational(cone.normals[j][i]));
    A[i][d] = sigma[i];
    A[i][d + 1] = -sigma[i];
  }
  std::vector<QSqrt2> c(d + 2);
  c[d] = 1;
  c[d + 1] = -1;
  const auto lp = detail::lp_maximize<QSqrt2>(A, v, c);
  if (lp.status != detail::LpStatus::kOptimal)
    throw NotInInteriorDualCone(
        "the vector does not admit a positive decomposition over the facet "
        "normals");
  const QSqrt2 t = lp.x[d] - lp.x[d + 1];
  if (sgn(t) <= 0)
    throw NotInInteriorDualCone(
        "the vector lies on the boundary or outside of the dual cone "
        "(max-min coefficient " + to_string(t) + ")");
  ReebVector out;
  out.coefficients.resize(d);
  for (int j = 0; j < d; ++j) out.coefficients[j] = lp.x[j] + t;
  out.ambient = v;
  for (int i = 0; i < n1; ++i) {
    QSqrt2 s;
    for (int j = 0; j < d; ++j)
      s += out.coefficients[j] * QSqrt2(Rational(cone.normals[j][i]));
    if (s != v[i])
      throw std::logic_error("simplex witness failed exact reconstruction");
  }
  return out;
}

ReebVector sum_of_normals_reeb(const MomentCone& cone) {
  validate_cone_shape(cone);
  ReebVector out;
  out.coefficients.assign(cone.facet_count(), QSqrt2(1));
  out.ambient.assign(cone.ambient_dim, QSqrt2());
  for (int j = 0; j < cone.facet_count(); ++j)
    for (int i = 0; i < cone.ambient_dim; ++i)
      out.ambient[i] += QSqrt2(Rational(cone.normals[j][i]));
  return out;
}

// ---------------------------------------------------------------------------
// Edge orbits
// ---------------------------------------------------------------------------

EdgeRotationData edge_orbit_rotations(const MomentCone& cone,
                                      const FaceLattice& faces,
                                      const ReebVector& reeb, int edge) {
  validate_cone_shape(cone);
  if (edge < 0 || edge >= static_cast<int>(faces.edges.size()))
    throw std::invalid_argument("edge index out of range");
  if (static_cast<int>(reeb.ambient.size()) != cone.ambient_dim)
    throw std::invalid_argument(
        "Reeb ambient vector length differs from the ambient dimension");
  const int n = cone.n();
  const int n1 = cone.ambient_dim;
  const int d = cone.facet_count();
  const FaceLattice::Edge& E = faces.edges[edge];

  EdgeRotationData out;
  out.edge = edge;
  out.b = dot_ambient(reeb.ambient, E.direction);
  if (sgn(out.b) <= 0)
    throw std::invalid_argument(
        "the Reeb vector does not pair positively with edge " +
        int_vec_str(E.direction));

  std::vector<int> inactive;
  for (int j = 0; j < d; ++j)
    if (std::find(E.active.begin(), E.active.end(), j) == E.active.end())
      inactive.push_back(j);

  // Pairings of the edge with the facets it avoids: positive integers, and
  // their extended gcd yields the canonical integral lift of the orbit.
  IntVec m;
  m.reserve(inactive.size());
  for (int j : inactive) {
    BigInt mj = dot_int(E.direction, cone.normals[j]);
    if (mj <= 0)
      throw DegenerateEdgeBasis("edge " + int_vec_str(E.direction) +
                                " pairs nonpositively with the avoided facet " +
                                std::to_string(j));
    m.push_back(std::move(mj));
  }
  auto [g, eta] = gcd_chain(m);
  if (g != 1)
    throw DegenerateEdgeBasis(
        "the simple orbit over edge " + int_vec_str(E.direction) +
        " admits no integral lift (inactive pairings have gcd " + g.str() +
        "); the orbit is non-contractible");

  // Solve for the rotation numbers at the active facets: the active normals
  // enter as columns and the right-hand side removes the integral part of
  // the lift.  The system is consistent with a unique solution for a good
  // cone; the rational and sqrt(2) parts separate because the matrix is
  // rational.
  std::vector<QSqrt2> rhs(n1);
  for (int i = 0; i < n1; ++i) {
    rhs[i] = reeb.ambient[i];
    for (std::size_t t = 0; t < inactive.size(); ++t)
      rhs[i] -= out.b * QSqrt2(Rational(eta[t] * cone.normals[inactive[t]][i]));
  }
  if (rational_rank(selected_rows(cone, E.active)) != n)
    throw DegenerateEdgeBasis("the facets through edge " +
                              int_vec_str(E.direction) +
                              " have dependent normals");
  RatMat cols(n1, RatVec(n));
  for (int i = 0; i < n1; ++i)
    for (int t = 0; t < n; ++t) cols[i][t] = Rational(cone.normals[E.active[t]][i]);
  RatVec rhs0(n1);
  RatVec rhs1(n1);
  for (int i = 0; i < n1; ++i) {
    rhs0[i] = rhs[i].rat;
    rhs1[i] = rhs[i].irr;
  }
  RatVec w0;
  RatVec w1;
  try {
    w0 = solve_consistent(cols, rhs0);
    w1 = solve_consistent(cols, rhs1);
  } catch (const std::invalid_argument&) {
    throw DegenerateEdgeBasis("the lift system over edge " +
                              int_vec_str(E.direction) +
                              " is inconsistent with the cone lattice");
  }

  out.c.assign(d, QSqrt2());
  for (int t = 0; t < n; ++t)
    out.c[E.active[t]] = QSqrt2(w0[t], w1[t]) / out.b;
  for (std::size_t t = 0; t < inactive.size(); ++t)
    out.c[inactive[t]] = QSqrt2(Rational(eta[t]));
  out.eta = std::move(eta);
  out.nonunique_lift = d > n1;
  return out;
}

EdgeOrbitIndex orbit_rs_index(const EdgeRotationData& rotation, int iterate) {
  if (iterate < 1) throw std::invalid_argument("iterate must be >= 1");
  EdgeOrbitIndex out;
  out.edge = rotation.edge;
  out.iterate = iterate;
  out.rotations.reserve(rotation.c.size());
  BigInt mu = 0;
  for (const auto& cj : rotation.c) {
    QSqrt2 x = QSqrt2(Rational(iterate)) * cj;
    mu += rho_turns(x);
    out.rotations.push_back(std::move(x));
  }
  const long long mu_ll = mu.convert_to<long long>();
  out.mu_rs = HalfInt{static_cast<int>(2 * mu_ll)};
  out.parity = static_cast<int>(((mu_ll % 2) + 2) % 2);
  return out;
}

SymplecticPath lifted_rotation_path(const EdgeRotationData& rotation,
                                    int iterate) {
  if (iterate < 1) throw std::invalid_argument("iterate must be >= 1");
  const int d = static_cast<int>(rotation.c.size());
  Vec angles(d);
  for (int j = 0; j < d; ++j)
    angles[j] = 2.0 * M_PI * iterate * to_double(rotation.c[j]);
  return SymplecticPath::rotation(d, angles);
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

namespace {

/// Shared admissibility checks for a Reeb vector over a certified cone:
/// irrational rotation numbers at every active facet, positive mean rotation
/// sum on every edge, and face-wise non-resonance.  Returns rotation data
/// and mean sums through the out-parameters; throws DegenerateReebVector
/// with a specific message otherwise.
void admit_reeb(const MomentCone& cone, const FaceLattice& faces,
                const ReebVector& reeb, std::vector<EdgeRotationData>& rots,
                std::vector<QSqrt2>& means) {
  bool rational = true;
  for (const auto& x : reeb.ambient)
    if (!x.is_rational()) rational = false;
  if (rational)
    throw DegenerateReebVector(
        "the Reeb vector is rational: the flow is periodic and every "
        "invariant contact form is degenerate");
  if (!face_nonresonant(cone, {}, reeb.ambient))
    throw DegenerateReebVector(
        "the Reeb vector is a real multiple of a rational vector; the flow "
        "is resonant");
  for (const auto& face : faces.faces)
    if (cone.ambient_dim - face.codim >= 2 &&
        !face_nonresonant(cone, face.facets, reeb.ambient))
      throw DegenerateReebVector("the Reeb flow is resonant over the face on "
                                 "facets " + facet_set_str(face.facets));

  const int ecount = static_cast<int>(faces.edges.size());
  rots.clear();
  means.clear();
  rots.reserve(ecount);
  means.reserve(ecount);
  for (int k = 0; k < ecount; ++k) {
    EdgeRotationData rot = edge_orbit_rotations(cone, faces, reeb, k);
    for (int j : faces.edges[k].active)
      if (rot.c[j].is_rational())
        throw DegenerateReebVector(
            "rational rotation number at facet " + std::to_string(j) +
            " over edge " + int_vec_str(faces.edges[k].direction) +
            "; the orbit family is degenerate");
    QSqrt2 mean;
    for (const auto& cj : rot.c) mean += cj;
    mean = QSqrt2(2) * mean;
    if (sgn(mean) <= 0)
      throw DegenerateReebVector(
          "nonpositive mean rotation sum over edge " +
          int_vec_str(faces.edges[k].direction) +
          "; the degree filtration does not exhaust the orbits");
    rots.push_back(std::move(rot));
    means.push_back(std::move(mean));
  }
}

}  // namespace

HCTable hc_table(const MomentCone& cone, const ReebVector& reeb,
                 int degree_max) {
  const FaceLattice faces = check_good_cone(cone);
  validate_reeb_shape(cone, reeb);
  const int n = cone.n();

  std::vector<EdgeRotationData> rots;
  std::vector<QSqrt2> means;
  admit_reeb(cone, faces, reeb, rots, means);

  // Enumerate iterates per edge.  The degree of the iterate-N orbit is at
  // least N * mean - n (each of the n active coordinates loses less than 1
  // against twice its rotation number, the inactive ones none), so the
  // enumeration may stop once that lower bound clears the cutoff.
  const int ecount = static_cast<int>(rots.size());
  std::vector<std::map<int, int>> partial(ecount);
  std::vector<std::exception_ptr> errors(ecount);
  auto run_edge = [&](int k) {
    try {
      std::map<int, int>& local = partial[k];
      for (int iterate = 1;; ++iterate) {
        const QSqrt2 slack =
            QSqrt2(Rational(iterate)) * means[k] - QSqrt2(Rational(n + degree_max));
        if (sgn(slack) > 0) break;
        const EdgeOrbitIndex oi = orbit_rs_index(rots[k], iterate);
        if (oi.mu_rs.twice % 2 != 0)
          throw std::logic_error("edge orbit index is not an integer");
        const int mu = oi.mu_rs.twice / 2;
        if (((mu - n) % 2 + 2) % 2 != 0)
          throw std::logic_error("orbit degree parity law violated");
        if (mu <= degree_max) ++local[mu];
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const int workers = worker_count(ecount);
  if (workers <= 1) {
    for (int k = 0; k < ecount; ++k) run_edge(k);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int k = w; k < ecount; k += workers) run_edge(k);
      });
    for (auto& th : pool) th.join();
  }
  for (int k = 0; k < ecount; ++k)
    if (errors[k]) std::rethrow_exception(errors[k]);

  HCTable out;
  out.cutoff = degree_max;
  for (int k = 0; k < ecount; ++k)
    for (const auto& [deg, cnt] : partial[k]) out.ranks[deg] += cnt;
  if (out.ranks.empty())
    throw CutoffTooSmall("no closed orbit has degree <= " +
                         std::to_string(degree_max) +
                         "; raise the cutoff to determine k_minus");
  out.k_minus = out.ranks.begin()->first;
  out.k_plus = std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Seeded nondegenerate perturbation
// ---------------------------------------------------------------------------

namespace {

/// splitmix64: tiny deterministic generator with portable output, used so
/// that seeded perturbations are reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

struct CandidateData {
  ReebVector reeb;
  std::vector<EdgeRotationData> rots;
  std::vector<QSqrt2> means;
};

CandidateData build_candidate(const MomentCone& cone, const FaceLattice& faces,
                              const ReebVector& base,
                              const std::vector<Rational>& t,
                              const Rational& delta) {
  const int d = cone.facet_count();
  const int n1 = cone.ambient_dim;
  CandidateData cand;
  cand.reeb.coefficients.resize(d);
  for (int j = 0; j < d; ++j)
    cand.reeb.coefficients[j] =
        base.coefficients[j] + QSqrt2(Rational(0), delta * t[j]);
  cand.reeb.ambient.assign(n1, QSqrt2());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n1; ++i)
      cand.reeb.ambient[i] +=
          cand.reeb.coefficients[j] * QSqrt2(Rational(cone.normals[j][i]));
  const int ecount = static_cast<int>(faces.edges.size());
  cand.rots.reserve(ecount);
  cand.means.reserve(ecount);
  for (int k = 0; k < ecount; ++k) {
    cand.rots.push_back(edge_orbit_rotations(cone, faces, cand.reeb, k));
    QSqrt2 mean;
    for (const auto& cj : cand.rots.back().c) mean += cj;
    cand.means.push_back(QSqrt2(2) * mean);
  }
  return cand;
}

enum class Outcome { kOk, kHalve, kRedraw };

/// Exact admissibility of a perturbed candidate.  Failures that scale with
/// delta ask for a halving; structural failures (which for a rational base
/// do not depend on delta) ask for a fresh direction after two halvings.
Outcome candidate_admissible(const MomentCone& cone, const FaceLattice& faces,
                             const CandidateData& cand,
                             const CandidateData& half,
                             const std::vector<EdgeRotationData>& base_rots,
                             int degree_budget, int halving,
                             std::string& reason) {
  const int n = cone.n();
  for (const auto& a : cand.reeb.coefficients)
    if (sgn(a) <= 0) {
      reason = "nonpositive perturbed coefficient";
      return Outcome::kHalve;
    }
  const Outcome structural = halving < 2 ? Outcome::kHalve : Outcome::kRedraw;
  const int ecount = static_cast<int>(faces.edges.size());
  for (int k = 0; k < ecount; ++k)
    for (int j : faces.edges[k].active)
      if (cand.rots[k].c[j].is_rational()) {
        reason = "rational rotation number over edge " +
                 int_vec_str(faces.edges[k].direction);
        return structural;
      }
  for (int k = 0; k < ecount; ++k)
    if (sgn(cand.means[k]) <= 0) {
      reason = "nonpositive mean rotation sum over edge " +
               int_vec_str(faces.edges[k].direction);
      return Outcome::kHalve;
    }
  if (!face_nonresonant(cone, {}, cand.reeb.ambient)) {
    reason = "resonant perturbed Reeb vector";
    return structural;
  }
  for (const auto& face : faces.faces)
    if (cone.ambient_dim - face.codim >= 2 &&
        !face_nonresonant(cone, face.facets, cand.reeb.ambient)) {
      reason = "resonance over the face on facets " + facet_set_str(face.facets);
      return structural;
    }

  // Floor stability: every floor decision within the degree budget must
  // agree with its delta -> 0 limit.  At a nonresonant limit value the limit
  // floor is just the floor of the limit; at a resonant one the decision is
  // the side from which the limit is approached, and agreement between delta
  // and delta / 2 certifies it (for a rational base the sign of the
  // difference is independent of delta, so agreement is conclusive).
  for (int k = 0; k < ecount; ++k) {
    for (int iterate = 1;; ++iterate) {
      const QSqrt2 slack = QSqrt2(Rational(iterate)) * cand.means[k] -
                           QSqrt2(Rational(n + degree_budget));
      if (sgn(slack) > 0) break;
      for (int j : faces.edges[k].active) {
        const QSqrt2 x = QSqrt2(Rational(iterate)) * cand.rots[k].c[j];
        const QSqrt2 x0 = QSqrt2(Rational(iterate)) * base_rots[k].c[j];
        if (x0.is_integer()) {
          const QSqrt2 xh = QSqrt2(Rational(iterate)) * half.rots[k].c[j];
          if (floor_q(x) != floor_q(xh)) {
            reason = "unsettled floor at a resonant iterate";
            return Outcome::kHalve;
          }
        } else if (floor_q(x) != floor_q(x0)) {
          reason = "floor differs from its limit value";
          return Outcome::kHalve;
        }
      }
    }
  }
  return Outcome::kOk;
}

}  // namespace

ReebVector nondegenerate_reeb_near(const MomentCone& cone,
                                   const ReebVector& base, std::uint64_t seed,
                                   int degree_budget) {
  const FaceLattice faces = check_good_cone(cone);
  validate_reeb_shape(cone, base);
  if (degree_budget < 0)
    throw std::invalid_argument("degree budget must be nonnegative");
  const int d = cone.facet_count();
  const int ecount = static_cast<int>(faces.edges.size());

  std::vector<EdgeRotationData> base_rots;
  base_rots.reserve(ecount);
  for (int k = 0; k < ecount; ++k)
    base_rots.push_back(edge_orbit_rotations(cone, faces, base, k));

  SplitMix64 rng{seed};
  std::string reason = "no direction drawn";
  constexpr int kMaxDraws = 48;
  constexpr int kMaxHalvings = 40;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    // Distinct rational offsets in (0, 1/2]; distinctness keeps the
    // direction away from the fully symmetric resonant ones.
    std::vector<Rational> t(d);
    std::set<std::uint64_t> seen;
    for (int j = 0; j < d; ++j) {
      std::uint64_t u = rng.next() % 1024;
      while (!seen.insert(u).second) u = rng.next() % 1024;
      t[j] = Rational(static_cast<unsigned long>(1 + u), 2048UL);
    }
    Rational delta(1, 64);
    for (int halving = 0; halving < kMaxHalvings; ++halving, delta /= 2) {
      const CandidateData cand = build_candidate(cone, faces, base, t, delta);
      const CandidateData half =
          build_candidate(cone, faces, base, t, delta / 2);
      const Outcome o = candidate_admissible(cone, faces, cand, half,
                                             base_rots, degree_budget,
                                             halving, reason);
      if (o == Outcome::kOk) return cand.reeb;
      if (o == Outcome::kRedraw) break;
    }
  }
  throw PerturbationFailure("no admissible perturbation after " +
                            std::to_string(kMaxDraws) +
                            " direction draws (last failure: " + reason + ")");
}

// ---------------------------------------------------------------------------
// Convexity-style certificate
// ---------------------------------------------------------------------------

ConvexityReport convexity_lower_bound(const MomentCone& cone,
                                      const std::vector<Rational>& y) {
  check_good_cone(cone);
  const int n = cone.n();
  const int d = cone.facet_count();
  if (static_cast<int>(y.size()) != d)
    throw std::invalid_argument(
        "rotation profile length differs from the facet count");
  for (const auto& yj : y)
    if (yj <= 0 || yj > 1)
      throw std::invalid_argument("rotation profile entries must lie in (0, 1]");

  for (int i = 0; i < cone.ambient_dim; ++i) {
    Rational s = 0;
    for (int j = 0; j < d; ++j) s += y[j] * Rational(cone.normals[j][i]);
    if (denominator(s) != 1)
      throw NotInSubgroupK(
          "sum_j y_j nu_j is not an integer vector; the profile does not "
          "define an orbit class");
  }

  BigInt mu = 0;
  for (const auto& yj : y) mu += rho_turns(QSqrt2(yj));
  ConvexityReport rep;
  rep.mu_rs = static_cast<int>(mu.convert_to<long long>());
  rep.bound = rep.mu_rs - n;

  // Compare against the table of an automatically perturbed Reeb vector.
  // The certificate caps k_minus from above, so start the cutoff at the
  // bound and widen it a few times if the table comes back empty.
  const ReebVector reeb = nondegenerate_reeb_near(
      cone, sum_of_normals_reeb(cone), 0, std::max(64, rep.bound + 64));
  for (int extra = 0; extra <= 64; extra += 8) {
    try {
      const HCTable table = hc_table(cone, reeb, std::max(rep.bound, 0) + extra);
      rep.k_minus = table.k_minus;
      break;
    } catch (const CutoffTooSmall&) {
    }
  }
  rep.meets_k_minus = rep.k_minus.has_value() && rep.bound >= *rep.k_minus;
  return rep;
}

}  // namespace reebindex
