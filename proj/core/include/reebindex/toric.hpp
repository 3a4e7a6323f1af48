// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Toric contact geometry from the moment cone up.  A good moment cone in
// R^{n+1} determines a contact toric manifold; closed Reeb orbits of a
// torus-invariant contact form sit over the edges (1-dimensional faces) of
// the cone, and their Robbin-Salamon indices are exact functions of lattice
// data.  Everything in this header is computed in exact arithmetic: cone
// combinatorics over the rationals, rotation numbers in Q(sqrt 2), index
// arithmetic over the integers.  Floating point enters only through the
// optional numeric cross-check path (lifted_rotation_path).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reebindex/index.hpp"
#include "reebindex/lattice.hpp"
#include "reebindex/qsqrt2.hpp"
#include "reebindex/sympath.hpp"

namespace reebindex {

// ---------------------------------------------------------------------------
// Cone data
// ---------------------------------------------------------------------------

/// A polyhedral cone C = { x : <x, nu_j> >= 0 } in R^{n+1}, described by the
/// inward normals of its facets.  Normals are integer vectors and are
/// expected to be primitive; check_good_cone verifies this along with the
/// rest of the goodness conditions.
struct MomentCone {
  /// Ambient dimension n + 1.
  int ambient_dim = 0;
  /// Facet normals nu_1, ..., nu_d, each of length ambient_dim.
  std::vector<IntVec> normals;

  /// Contact dimension parameter n (the manifold has dimension 2n + 1).
  int n() const { return ambient_dim - 1; }
  /// Number of facets d.
  int facet_count() const { return static_cast<int>(normals.size()); }
};

/// The proper faces of a good moment cone, as certified by check_good_cone.
struct FaceLattice {
  /// A 1-dimensional face of the cone.
  struct Edge {
    /// Primitive integer generator of the edge ray.
    IntVec direction;
    /// Indices of the facets containing the edge, ascending.  For a good
    /// cone this list has exactly n entries.
    std::vector<int> active;
  };

  /// A proper face of positive dimension, recorded by the facets cutting it
  /// out.  For a good cone a codimension-k face lies on exactly k facets.
  struct Face {
    std::vector<int> facets;
    int codim = 0;
  };

  /// Edges sorted by direction vector, ascending lexicographically.
  std::vector<Edge> edges;
  /// All proper faces, sorted by (codim, facets).
  std::vector<Face> faces;

  /// Number of faces of each codimension, for reporting.
  std::map<int, int> counts_by_codim() const;
};

/// A Reeb vector nu = sum_j a_j nu_j with all a_j > 0, together with the
/// ambient vector itself.  Coefficients live in Q(sqrt 2) so that the
/// irrationality needed for nondegeneracy is certified algebraically.
struct ReebVector {
  std::vector<QSqrt2> coefficients;
  std::vector<QSqrt2> ambient;
};

// ---------------------------------------------------------------------------
// Goodness and global invariants
// ---------------------------------------------------------------------------

/// Certify that the cone is a good moment cone and return its face lattice.
///
/// The checks run in this order, throwing the first violation found:
///   - NonPrimitiveNormal    a normal is zero or has a content > 1;
///   - NotStrictlyConvex     the normals do not span R^{n+1}, so the cone
///                           contains a line;
///   - RedundantNormal       a listed normal is not the normal of a genuine
///                           codimension-1 face (duplicate or superfluous);
///   - FaceFacetCountMismatch  some codimension-k face does not lie on
///                           exactly k facets;
///   - NotIntegralBasisCompletable  the normals through some face do not
///                           extend to an integral basis of Z^{n+1} (their
///                           span is not a saturated sublattice).
FaceLattice check_good_cone(const MomentCone& cone);

/// Invariant factors of Z^{n+1} / (lattice generated by the normals),
/// excluding trivial factors.  An empty result means the fundamental group
/// of the associated contact manifold is trivial.  The cone is re-certified
/// good before the quotient is computed.
std::vector<BigInt> fundamental_group(const MomentCone& cone);

/// Decide whether v lies in the interior of the dual cone, i.e. whether v is
/// the Reeb vector of some invariant contact form.  On success returns the
/// coefficient witness a with v = sum a_j nu_j and min_j a_j maximal; the
/// witness is produced by a deterministic exact simplex solve and is part of
/// the reproducibility contract.  Throws NotInInteriorDualCone otherwise.
ReebVector is_reeb_vector(const MomentCone& cone, const std::vector<QSqrt2>& v);

/// The canonical base point sum_j nu_j (all coefficients 1).
ReebVector sum_of_normals_reeb(const MomentCone& cone);

// ---------------------------------------------------------------------------
// Orbit data over edges
// ---------------------------------------------------------------------------

/// Rotation data of the simple closed Reeb orbit over one edge.  The orbit's
/// linearized return map is conjugate to a rotation with per-facet rotation
/// numbers c_j; the iterate N orbit rotates by N c_j turns in coordinate j.
struct EdgeRotationData {
  /// Index into FaceLattice::edges.
  int edge = 0;
  /// Pairing <e, nu> of the edge generator with the Reeb vector; the simple
  /// orbit over the edge has period 2 pi / b up to normalization.
  QSqrt2 b;
  /// Rotation numbers c_1, ..., c_d, one per facet.  Entries at facets
  /// containing the edge are w_t / b; the remaining entries are the integers
  /// eta_t of the canonical lift.
  std::vector<QSqrt2> c;
  /// Integer lift coefficients on the facets not containing the edge,
  /// produced by the greedy extended gcd chain (see gcd_chain).
  IntVec eta;
  /// True when the lift is not unique (more facets than ambient dimension).
  /// The canonical greedy choice is applied; rotation numbers at the active
  /// facets, and hence all indices, do not depend on it.
  bool nonunique_lift = false;
};

/// Robbin-Salamon index of one iterate of an edge orbit.
struct EdgeOrbitIndex {
  int edge = 0;
  int iterate = 1;
  /// Total rotation numbers N c_j of the iterate.
  std::vector<QSqrt2> rotations;
  /// mu_RS of the orbit in the standard trivialization; always an integer
  /// for nondegenerate orbits but stored as a half-integer for uniformity.
  HalfInt mu_rs;
  /// Parity of the grading degree mu_RS (0 or 1).
  int parity = 0;
};

/// Compute the rotation data of the simple orbit over the given edge.
/// Requires a certified face lattice and an accepted Reeb vector.  Throws
/// DegenerateEdgeBasis if the lattice data of the edge is inconsistent with
/// goodness (unreachable after certification).
EdgeRotationData edge_orbit_rotations(const MomentCone& cone,
                                      const FaceLattice& faces,
                                      const ReebVector& reeb, int edge);

/// Robbin-Salamon index of the iterate-N orbit, computed exactly from the
/// rotation numbers: each coordinate contributes 2 floor(N c_j) + 1 when
/// N c_j is not an integer and 2 N c_j when it is.
EdgeOrbitIndex orbit_rs_index(const EdgeRotationData& rotation, int iterate);

/// The iterate-N orbit's linearized Reeb flow as an explicit symplectic
/// rotation path, for numeric cross-checks against rs_index.  Coordinate j
/// rotates by 2 pi N c_j in total.
SymplecticPath lifted_rotation_path(const EdgeRotationData& rotation,
                                    int iterate);

// ---------------------------------------------------------------------------
// Contact homology tables
// ---------------------------------------------------------------------------

/// Rank table of cylindrical contact homology up to a degree cutoff.
struct HCTable {
  /// Nonzero ranks by grading degree; degrees not listed have rank 0.
  std::map<int, int> ranks;
  /// Least degree with nonzero rank.
  std::optional<int> k_minus;
  /// Greatest degree with nonzero rank, when finite.  For good toric
  /// contact manifolds the ranks never terminate, so this is always empty;
  /// the field exists for reporting symmetry with k_minus.
  std::optional<int> k_plus;
  /// The degree cutoff the table was computed to.
  int cutoff = 0;
};

/// Compute the contact homology rank table of the good cone with the given
/// nondegenerate Reeb vector, listing all degrees up to degree_max.
///
/// The Reeb vector must be nondegenerate in the toric sense: every rotation
/// number at a facet through an edge is irrational, and over every face with
/// fiber dimension >= 2 the Reeb vector is not a real multiple of a rational
/// vector.  Both conditions are decided exactly in Q(sqrt 2) and a violation
/// throws DegenerateReebVector; in particular a rational Reeb vector is
/// always rejected (its flow is periodic, so no invariant form is
/// nondegenerate).  All grading degrees are checked to have the parity of
/// the ambient manifold, which is what makes the differential vanish and
/// the table equal the homology.
///
/// Throws CutoffTooSmall when no orbit has degree <= degree_max, since then
/// not even k_minus is determined.  Edges are processed in parallel; set
/// REEB_INDEX_THREADS to cap the worker count.  Results are deterministic
/// and independent of thread scheduling.
HCTable hc_table(const MomentCone& cone, const ReebVector& reeb,
                 int degree_max);

/// Produce a nondegenerate Reeb vector near the given base point by a seeded
/// deterministic perturbation a_j -> a_j + delta t_j sqrt 2 with distinct
/// rational t_j > 0.  The result is accepted only after exact verification:
/// positive coefficients, positive pairing with every edge, positive mean
/// rotation sum on every edge, irrational rotation numbers at active facets,
/// face-wise non-resonance, and stability of every floor decision
/// floor(N c_j) down to the delta -> 0 limit for all iterates N within the
/// degree budget.  The same seed always yields the same vector.  Throws
/// PerturbationFailure if no admissible perturbation is found within the
/// retry budget.
ReebVector nondegenerate_reeb_near(const MomentCone& cone,
                                   const ReebVector& base, std::uint64_t seed,
                                   int degree_budget = 64);

// ---------------------------------------------------------------------------
// Convexity-style lower bounds
// ---------------------------------------------------------------------------

/// Report of the convexity-style certificate computed by
/// convexity_lower_bound.
struct ConvexityReport {
  /// Robbin-Salamon index of the distinguished orbit determined by the
  /// rotation profile y.
  int mu_rs = 0;
  /// The certified degree mu_rs - n of the distinguished orbit class.
  /// Contact homology is populated at or below this degree, so the bound
  /// caps k_minus from above.
  int bound = 0;
  /// Minimal degree of the contact homology table computed with an
  /// automatically chosen nondegenerate Reeb vector, when available.
  std::optional<int> k_minus;
  /// Whether the computed table confirms the certificate: bound >= k_minus.
  bool meets_k_minus = false;
};

/// Certificate behind the convexity estimate: a rotation profile y in
/// (0, 1]^d satisfying the lattice membership condition
/// sum_j y_j nu_j in Z^{n+1} (else NotInSubgroupK) witnesses an orbit class
/// of degree mu_RS - n with mu_RS = sum_j rho(y_j), and the minimal degree
/// k_minus of the homology is at most that value.  The report also computes
/// k_minus of an automatically perturbed Reeb vector for comparison.
ConvexityReport convexity_lower_bound(const MomentCone& cone,
                                      const std::vector<Rational>& y);

}  // namespace reebindex
