// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// JSON (de)serialization for the CLI: strict schema readers for cones, Reeb
// vectors, paths and estimate inputs, and writers for every report type.
// Readers reject unknown keys, missing keys and wrong value types before any
// computation starts; writers emit nlohmann::ordered_json so that output is
// byte-deterministic with keys in insertion order and map keys in numeric
// order.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reebindex/bott.hpp"
#include "reebindex/estimates.hpp"
#include "reebindex/index.hpp"
#include "reebindex/lattice.hpp"
#include "reebindex/qsqrt2.hpp"
#include "reebindex/sympath.hpp"
#include "reebindex/toric.hpp"

namespace reebindex {

using OrderedJson = nlohmann::ordered_json;

/// Malformed or schema-violating input JSON. The CLI maps this to exit
/// code 2; domain errors raised after a successful parse map to exit 1.
class JsonSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse a file as JSON; JsonSchemaError on unreadable file or syntax error.
OrderedJson load_json_file(const std::string& path);

/// Parse "p" or "p/q" with integer p and positive integer q.
Rational rational_from_string(const std::string& text);

/// Parse an element of Q(sqrt 2): "p", "p/q", "c*sqrt2", or the combined
/// form "a+c*sqrt2" / "a-c*sqrt2" as produced by to_string(QSqrt2).
QSqrt2 qsqrt2_from_string(const std::string& text);

// --- Cone JSON: { "dim": n+1, "normals": [[int]] } -------------------------

MomentCone cone_from_json(const OrderedJson& j);
OrderedJson cone_to_json(const MomentCone& cone);

// --- Reeb JSON: { "coefficients": [q] } or { "vector": [q] } ---------------
// Entries are rational strings, optionally with a *sqrt2 part. The
// coefficients form lists one facet coefficient a_j per normal and the
// ambient vector is reconstructed as sum a_j nu_j; the vector form gives the
// ambient vector and the coefficients are recovered as the canonical
// interior witness of is_reeb_vector.

ReebVector reeb_from_json(const OrderedJson& j, const MomentCone& cone);
OrderedJson reeb_to_json(const ReebVector& reeb);

// --- Path JSON: { "n": int, "samples": [{ "t": float, "A": [[float]] }] } --
// Matrices are row-major, 2n x 2n, symmetric within the path tolerance.

SymplecticPath path_from_json(const OrderedJson& j);
OrderedJson path_to_json(const SymplecticPath& path);

// --- Report writers ---------------------------------------------------------

/// { "ranks": { "degree": rank }, "k_minus": int|null, "k_plus": int|null,
///   "cutoff": int }
OrderedJson hc_table_to_json(const HCTable& table);

/// { "mu_rs": "p/2", "mu_minus": int, "mu_plus": int, "mean": float,
///   "nullity": int }
OrderedJson index_report_to_json(const IndexReport& report);

/// { "breakpoints": [float], "arc_values": [int], "point_values": [int] }
OrderedJson bott_function_to_json(const BottFunction& bott);

OrderedJson elliptic_certificate_to_json(const EllipticCertificate& cert);

/// Merged rotation data and index of one edge orbit iterate.
OrderedJson edge_orbit_to_json(const EdgeRotationData& rotation,
                               const EdgeOrbitIndex& orbit);

OrderedJson pinching_report_to_json(const PinchingReport& report);

// --- Estimate job inputs -----------------------------------------------------

/// { "n": int, "r": float, "R": float, "k": float }
PinchingData pinching_from_json(const OrderedJson& j);

/// Prequantization job: data plus the degree range of the requested table.
struct PrequantJob {
  PrequantizationData data;
  std::pair<int, int> degree_range;
};

/// { "n": int, "betti": [int], "mu_phi": int, "multiples": [int],
///   "m": int (optional, default 1), "degree_range": [lo, hi] }
PrequantJob prequant_from_json(const OrderedJson& j);

/// Flow data for the closed-form rotation index.
struct IndHrJob {
  int n = 0;
  double S = 0.0;
  double R = 0.0;
};

/// { "n": int, "S": float, "R": float }
IndHrJob ind_hr_from_json(const OrderedJson& j);

}  // namespace reebindex
