// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT

#include "jsonio.hpp"

#include <fstream>
#include <initializer_list>
#include <regex>
#include <sstream>

namespace reebindex {

namespace {

// --- Strictness helpers ------------------------------------------------------

[[noreturn]] void schema_fail(const std::string& what, const std::string& why) {
  throw JsonSchemaError(what + ": " + why);
}

/// Every reader validates the exact key set: all of `required` present,
/// nothing outside `required` + `optional` tolerated.
void expect_keys(const OrderedJson& j,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional,
                 const std::string& what) {
  if (!j.is_object()) schema_fail(what, "expected a JSON object");
  for (const char* key : required) {
    if (!j.contains(key)) {
      schema_fail(what, std::string("missing required key \"") + key + "\"");
    }
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : required) known = known || item.key() == key;
    for (const char* key : optional) known = known || item.key() == key;
    if (!known) schema_fail(what, "unknown key \"" + item.key() + "\"");
  }
}

int get_int(const OrderedJson& v, const std::string& what) {
  if (!v.is_number_integer()) schema_fail(what, "expected an integer");
  const auto wide = v.get<long long>();
  if (wide < INT32_MIN || wide > INT32_MAX) schema_fail(what, "out of range");
  return static_cast<int>(wide);
}

double get_double(const OrderedJson& v, const std::string& what) {
  if (!v.is_number()) schema_fail(what, "expected a number");
  return v.get<double>();
}

std::string get_string(const OrderedJson& v, const std::string& what) {
  if (!v.is_string()) schema_fail(what, "expected a string");
  return v.get<std::string>();
}

std::vector<QSqrt2> qsqrt2_list(const OrderedJson& v, const std::string& what) {
  if (!v.is_array()) schema_fail(what, "expected an array of strings");
  std::vector<QSqrt2> out;
  out.reserve(v.size());
  for (const auto& entry : v) out.push_back(qsqrt2_from_string(get_string(entry, what)));
  return out;
}

OrderedJson qsqrt2_strings(const std::vector<QSqrt2>& values) {
  OrderedJson arr = OrderedJson::array();
  for (const QSqrt2& value : values) arr.push_back(to_string(value));
  return arr;
}

Rational rational_from_parts(const std::string& text, const std::string& what) {
  static const std::regex grammar(R"(^([+-]?\d+)(?:/(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, grammar)) {
    schema_fail(what, "\"" + text + "\" is not a rational \"p\" or \"p/q\"");
  }
  std::string head = m[1].str();
  if (!head.empty() && head.front() == '+') head.erase(0, 1);
  const BigInt num(head);
  const BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (den == 0) schema_fail(what, "\"" + text + "\" has denominator zero");
  return Rational(num) / Rational(den);
}

}  // namespace

// --- Scalars -----------------------------------------------------------------

OrderedJson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonSchemaError("cannot open input file " + path);
  try {
    return OrderedJson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(path + ": " + e.what());
  }
}

Rational rational_from_string(const std::string& text) {
  return rational_from_parts(text, "rational");
}

QSqrt2 qsqrt2_from_string(const std::string& text) {
  static const std::regex combined(
      R"(^\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*sqrt2\s*$)");
  static const std::regex irr_only(R"(^\s*([+-]?\d+(?:/\d+)?)\s*\*\s*sqrt2\s*$)");
  static const std::regex rat_only(R"(^\s*([+-]?\d+(?:/\d+)?)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, rat_only)) {
    return QSqrt2(rational_from_parts(m[1].str(), "coefficient"));
  }
  if (std::regex_match(text, m, irr_only)) {
    return QSqrt2(Rational(0), rational_from_parts(m[1].str(), "coefficient"));
  }
  if (std::regex_match(text, m, combined)) {
    Rational irr = rational_from_parts(m[3].str(), "coefficient");
    if (m[2].str() == "-") irr = -irr;
    return QSqrt2(rational_from_parts(m[1].str(), "coefficient"), irr);
  }
  throw JsonSchemaError("coefficient: \"" + text +
                        "\" is not \"p\", \"p/q\" or \"a+c*sqrt2\"");
}

// --- Cones -------------------------------------------------------------------

MomentCone cone_from_json(const OrderedJson& j) {
  expect_keys(j, {"dim", "normals"}, {}, "cone");
  MomentCone cone;
  cone.ambient_dim = get_int(j.at("dim"), "cone.dim");
  const OrderedJson& normals = j.at("normals");
  if (!normals.is_array()) schema_fail("cone.normals", "expected an array");
  for (const auto& row : normals) {
    if (!row.is_array() || static_cast<int>(row.size()) != cone.ambient_dim) {
      schema_fail("cone.normals", "each normal must be an array of dim integers");
    }
    IntVec normal;
    normal.reserve(row.size());
    for (const auto& entry : row) {
      normal.emplace_back(static_cast<long long>(get_int(entry, "cone.normals")));
    }
    cone.normals.push_back(std::move(normal));
  }
  return cone;
}

OrderedJson cone_to_json(const MomentCone& cone) {
  OrderedJson j;
  j["dim"] = cone.ambient_dim;
  OrderedJson normals = OrderedJson::array();
  for (const IntVec& normal : cone.normals) {
    OrderedJson row = OrderedJson::array();
    for (const BigInt& entry : normal) row.push_back(entry.convert_to<long long>());
    normals.push_back(std::move(row));
  }
  j["normals"] = std::move(normals);
  return j;
}

// --- Reeb vectors ------------------------------------------------------------

ReebVector reeb_from_json(const OrderedJson& j, const MomentCone& cone) {
  if (!j.is_object()) schema_fail("reeb", "expected a JSON object");
  const bool has_coeffs = j.contains("coefficients");
  const bool has_vector = j.contains("vector");
  if (has_coeffs == has_vector) {
    schema_fail("reeb", "exactly one of \"coefficients\" or \"vector\" required");
  }
  if (has_vector) {
    expect_keys(j, {"vector"}, {}, "reeb");
    std::vector<QSqrt2> ambient = qsqrt2_list(j.at("vector"), "reeb.vector");
    if (static_cast<int>(ambient.size()) != cone.ambient_dim) {
      schema_fail("reeb.vector", "length must equal the ambient dimension");
    }
    return is_reeb_vector(cone, ambient);
  }
  expect_keys(j, {"coefficients"}, {}, "reeb");
  ReebVector reeb;
  reeb.coefficients = qsqrt2_list(j.at("coefficients"), "reeb.coefficients");
  if (static_cast<int>(reeb.coefficients.size()) != cone.facet_count()) {
    schema_fail("reeb.coefficients", "length must equal the facet count");
  }
  reeb.ambient.assign(cone.ambient_dim, QSqrt2(0));
  for (int jidx = 0; jidx < cone.facet_count(); ++jidx) {
    for (int i = 0; i < cone.ambient_dim; ++i) {
      reeb.ambient[i] =
          reeb.ambient[i] +
          reeb.coefficients[jidx] * QSqrt2(Rational(cone.normals[jidx][i]));
    }
  }
  return reeb;
}

OrderedJson reeb_to_json(const ReebVector& reeb) {
  OrderedJson j;
  j["coefficients"] = qsqrt2_strings(reeb.coefficients);
  return j;
}

// --- Paths -------------------------------------------------------------------

SymplecticPath path_from_json(const OrderedJson& j) {
  expect_keys(j, {"n", "samples"}, {}, "path");
  const int n = get_int(j.at("n"), "path.n");
  if (n < 1) schema_fail("path.n", "must be at least 1");
  const OrderedJson& samples = j.at("samples");
  if (!samples.is_array()) schema_fail("path.samples", "expected an array");
  std::vector<double> times;
  std::vector<Mat> generators;
  for (const auto& sample : samples) {
    expect_keys(sample, {"t", "A"}, {}, "path.samples[]");
    times.push_back(get_double(sample.at("t"), "path.samples[].t"));
    const OrderedJson& rows = sample.at("A");
    if (!rows.is_array() || static_cast<int>(rows.size()) != 2 * n) {
      schema_fail("path.samples[].A", "expected a 2n x 2n row-major matrix");
    }
    Mat A(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
      const OrderedJson& row = rows.at(r);
      if (!row.is_array() || static_cast<int>(row.size()) != 2 * n) {
        schema_fail("path.samples[].A", "expected a 2n x 2n row-major matrix");
      }
      for (int c = 0; c < 2 * n; ++c) {
        A(r, c) = get_double(row.at(c), "path.samples[].A");
      }
    }
    generators.push_back(std::move(A));
  }
  return SymplecticPath(n, std::move(times), std::move(generators));
}

OrderedJson path_to_json(const SymplecticPath& path) {
  OrderedJson j;
  j["n"] = path.n();
  OrderedJson samples = OrderedJson::array();
  for (std::size_t s = 0; s < path.times().size(); ++s) {
    OrderedJson sample;
    sample["t"] = path.times()[s];
    OrderedJson rows = OrderedJson::array();
    const Mat& A = path.generators()[s];
    for (int r = 0; r < A.rows(); ++r) {
      OrderedJson row = OrderedJson::array();
      for (int c = 0; c < A.cols(); ++c) row.push_back(A(r, c));
      rows.push_back(std::move(row));
    }
    sample["A"] = std::move(rows);
    samples.push_back(std::move(sample));
  }
  j["samples"] = std::move(samples);
  return j;
}

// --- Report writers ----------------------------------------------------------

OrderedJson hc_table_to_json(const HCTable& table) {
  OrderedJson j;
  OrderedJson ranks = OrderedJson::object();
  for (const auto& [degree, rank] : table.ranks) {
    ranks[std::to_string(degree)] = rank;
  }
  j["ranks"] = std::move(ranks);
  j["k_minus"] = table.k_minus ? OrderedJson(*table.k_minus) : OrderedJson(nullptr);
  j["k_plus"] = table.k_plus ? OrderedJson(*table.k_plus) : OrderedJson(nullptr);
  j["cutoff"] = table.cutoff;
  return j;
}

OrderedJson index_report_to_json(const IndexReport& report) {
  OrderedJson j;
  j["mu_rs"] = report.mu_rs.str();
  j["mu_minus"] = report.mu_minus;
  j["mu_plus"] = report.mu_plus;
  j["mean"] = report.mean;
  j["nullity"] = report.nullity;
  return j;
}

OrderedJson bott_function_to_json(const BottFunction& bott) {
  OrderedJson j;
  j["breakpoints"] = bott.breakpoints;
  j["arc_values"] = bott.arc_values;
  j["point_values"] = bott.point_values;
  return j;
}

OrderedJson elliptic_certificate_to_json(const EllipticCertificate& cert) {
  OrderedJson j;
  j["verdict"] = cert.verdict == EllipticVerdict::Elliptic ? "Elliptic"
                                                           : "HypothesisNotMet";
  j["branch"] = cert.branch;
  j["j"] = cert.j;
  j["mu_minus_1"] = cert.mu_minus_1;
  j["mu_minus_j"] = cert.mu_minus_j;
  j["mu_plus_1"] = cert.mu_plus_1;
  j["mu_plus_j"] = cert.mu_plus_j;
  j["pinned_index"] = cert.pinned_index;
  j["spectrum_elliptic"] = cert.spectrum_elliptic;
  return j;
}

OrderedJson edge_orbit_to_json(const EdgeRotationData& rotation,
                               const EdgeOrbitIndex& orbit) {
  OrderedJson j;
  j["edge"] = orbit.edge;
  j["iterate"] = orbit.iterate;
  j["b"] = to_string(rotation.b);
  j["c"] = qsqrt2_strings(rotation.c);
  OrderedJson eta = OrderedJson::array();
  for (const BigInt& entry : rotation.eta) eta.push_back(entry.convert_to<long long>());
  j["eta"] = std::move(eta);
  j["nonunique_lift"] = rotation.nonunique_lift;
  j["rotations"] = qsqrt2_strings(orbit.rotations);
  j["mu_rs"] = orbit.mu_rs.str();
  j["parity"] = orbit.parity;
  return j;
}

OrderedJson pinching_report_to_json(const PinchingReport& report) {
  OrderedJson j;
  j["floor_k"] = report.floor_k;
  j["bound"] = report.bound;
  j["min_period"] = report.min_period;
  j["floor_argument"] = report.floor_argument;
  j["ind_hr_value"] = report.ind_hr_value;
  j["correction"] = report.correction;
  j["boundary_case"] = report.boundary_case;
  return j;
}

// --- Estimate job inputs -------------------------------------------------------

PinchingData pinching_from_json(const OrderedJson& j) {
  expect_keys(j, {"n", "r", "R", "k"}, {}, "pinching");
  PinchingData data;
  data.n = get_int(j.at("n"), "pinching.n");
  data.r = get_double(j.at("r"), "pinching.r");
  data.R = get_double(j.at("R"), "pinching.R");
  data.k = get_double(j.at("k"), "pinching.k");
  return data;
}

PrequantJob prequant_from_json(const OrderedJson& j) {
  expect_keys(j, {"n", "betti", "mu_phi", "multiples", "degree_range"}, {"m"},
              "prequant");
  PrequantJob job;
  job.data.n = get_int(j.at("n"), "prequant.n");
  const OrderedJson& betti = j.at("betti");
  if (!betti.is_array()) schema_fail("prequant.betti", "expected an array");
  for (const auto& entry : betti) {
    job.data.betti.push_back(get_int(entry, "prequant.betti"));
  }
  job.data.mu_phi = get_int(j.at("mu_phi"), "prequant.mu_phi");
  const OrderedJson& multiples = j.at("multiples");
  if (!multiples.is_array()) schema_fail("prequant.multiples", "expected an array");
  for (const auto& entry : multiples) {
    job.data.multiples.insert(get_int(entry, "prequant.multiples"));
  }
  job.data.m = j.contains("m") ? get_int(j.at("m"), "prequant.m") : 1;
  const OrderedJson& range = j.at("degree_range");
  if (!range.is_array() || range.size() != 2) {
    schema_fail("prequant.degree_range", "expected [lo, hi]");
  }
  job.degree_range = {get_int(range.at(0), "prequant.degree_range"),
                      get_int(range.at(1), "prequant.degree_range")};
  return job;
}

IndHrJob ind_hr_from_json(const OrderedJson& j) {
  expect_keys(j, {"n", "S", "R"}, {}, "ind_hr");
  IndHrJob job;
  job.n = get_int(j.at("n"), "ind_hr.n");
  job.S = get_double(j.at("S"), "ind_hr.S");
  job.R = get_double(j.at("R"), "ind_hr.R");
  return job;
}

}  // namespace reebindex
