// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// CLI front end. One subcommand per library operation; strict JSON in,
// deterministic JSON (or aligned text) out. Exit codes: 0 success,
// 1 domain error (machine-readable "error" name in the report),
// 2 malformed command line or input JSON.
#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "jsonio.hpp"
#include "reebindex/errors.hpp"

namespace {

using reebindex::OrderedJson;

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Thrown after a verdict report has already been printed; carries only the
/// process exit code.
struct ReportedExit {
  int code = 1;
};

void flatten(const OrderedJson& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  for (const auto& item : j.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    if (item.value().is_object()) {
      flatten(item.value(), key, rows);
    } else {
      rows.emplace_back(key, item.value().dump());
    }
  }
}

/// Print a report: pretty JSON, or aligned two-column text with dotted key
/// paths. Both carry exactly the same numbers.
void emit(const OrderedJson& j, const std::string& format) {
  if (format == "table") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    for (const auto& row : rows) {
      std::cout << row.first << std::string(width - row.first.size() + 2, ' ')
                << row.second << "\n";
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

void emit_error(const std::string& name, const std::string& message,
                const std::string& format) {
  OrderedJson out;
  out["error"] = name;
  out["message"] = message;
  emit(out, format);
}

reebindex::Tolerances make_tol(double tol) {
  reebindex::Tolerances t;
  if (tol > 0.0) t.eig_tol = tol;
  return t;
}

/// Resolve --reeb: "auto" perturbs the sum of normals deterministically from
/// the seed, anything else is a path to a Reeb JSON file.
reebindex::ReebVector resolve_reeb(const reebindex::MomentCone& cone,
                                   const std::string& spec, std::uint64_t seed,
                                   int degree_budget) {
  if (spec == "auto") {
    const reebindex::ReebVector base = reebindex::sum_of_normals_reeb(cone);
    return reebindex::nondegenerate_reeb_near(cone, base, seed, degree_budget);
  }
  return reebindex::reeb_from_json(reebindex::load_json_file(spec), cone);
}

OrderedJson qsqrt2_strings(const std::vector<reebindex::QSqrt2>& values) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& value : values) arr.push_back(reebindex::to_string(value));
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reeb-index: symplectic path indices and toric contact homology "
      "tables.\nExit codes: 0 success, 1 domain error, 2 parse error. "
      "REEB_INDEX_THREADS caps the worker pool of table jobs."};
  app.require_subcommand(1);

  std::string input;
  std::string format = "json";
  std::string reeb_spec = "auto";
  std::uint64_t seed = 0;
  int cutoff = 12;
  int edge = 0;
  int iterate = 1;
  int elliptic_j = 0;
  double tol = 0.0;
  bool want_bott = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Input JSON file")->required();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };

  CLI::App* cmd_check = app.add_subcommand(
      "check-cone", "Certify a good moment cone; report faces and pi_1");
  add_common(cmd_check);

  CLI::App* cmd_pi1 = app.add_subcommand(
      "pi1", "Invariant factors of the fundamental group from the normals");
  add_common(cmd_pi1);

  CLI::App* cmd_hc = app.add_subcommand(
      "hc", "Contact homology rank table of a good cone");
  add_common(cmd_hc);
  cmd_hc->add_option("--reeb", reeb_spec, "Reeb JSON file or \"auto\"")
      ->capture_default_str();
  cmd_hc->add_option("--seed", seed, "Seed for the auto perturbation")
      ->capture_default_str();
  cmd_hc->add_option("--cutoff", cutoff, "Top grading degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* cmd_reeb = app.add_subcommand(
      "reeb-check", "Check interior dual-cone membership of a Reeb vector");
  add_common(cmd_reeb);
  cmd_reeb->add_option("--reeb", reeb_spec, "Reeb JSON file")->required();

  CLI::App* cmd_orbit = app.add_subcommand(
      "orbit-index", "Rotation data and index of one edge orbit iterate");
  add_common(cmd_orbit);
  cmd_orbit->add_option("--reeb", reeb_spec, "Reeb JSON file or \"auto\"")
      ->capture_default_str();
  cmd_orbit->add_option("--seed", seed, "Seed for the auto perturbation")
      ->capture_default_str();
  cmd_orbit->add_option("--edge", edge, "Edge index in the face lattice")
      ->required();
  cmd_orbit->add_option("--iterate", iterate, "Iterate order N >= 1")
      ->capture_default_str();

  CLI::App* cmd_index = app.add_subcommand(
      "index", "Full index report of a symplectic path");
  add_common(cmd_index);
  cmd_index->add_flag("--bott", want_bott, "Also emit the Bott function");
  cmd_index->add_option("--elliptic-check", elliptic_j,
                        "Also emit the ellipticity certificate at iterate J");
  cmd_index->add_option("--tol", tol, "Eigenvalue tolerance override");

  CLI::App* cmd_bott = app.add_subcommand(
      "bott", "Index report plus Bott function of a symplectic path");
  add_common(cmd_bott);
  cmd_bott->add_option("--tol", tol, "Eigenvalue tolerance override");

  CLI::App* cmd_elliptic = app.add_subcommand(
      "elliptic-check", "Index-pinching ellipticity certificate");
  add_common(cmd_elliptic);
  cmd_elliptic->add_option("--j", elliptic_j, "Iterate order J >= 2")
      ->required();
  cmd_elliptic->add_option("--tol", tol, "Eigenvalue tolerance override");

  CLI::App* cmd_pinch = app.add_subcommand(
      "pinching", "Dynamical convexity bound for a pinched hypersurface");
  add_common(cmd_pinch);

  CLI::App* cmd_prequant = app.add_subcommand(
      "prequant-hc", "Contact homology table of a prequantization bundle");
  add_common(cmd_prequant);

  CLI::App* cmd_indhr = app.add_subcommand(
      "ind-hr", "Closed-form lower index of the round comparison flow");
  add_common(cmd_indhr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_check) {
      const reebindex::MomentCone cone =
          reebindex::cone_from_json(reebindex::load_json_file(input));
      try {
        const reebindex::FaceLattice faces = reebindex::check_good_cone(cone);
        OrderedJson out;
        out["good"] = true;
        out["dim"] = cone.ambient_dim;
        out["facets"] = cone.facet_count();
        OrderedJson counts = OrderedJson::object();
        for (const auto& [codim, count] : faces.counts_by_codim()) {
          counts[std::to_string(codim)] = count;
        }
        out["face_counts_by_codim"] = std::move(counts);
        OrderedJson pi1 = OrderedJson::array();
        for (const auto& factor : reebindex::fundamental_group(cone)) {
          pi1.push_back(factor.str());
        }
        out["pi1_invariant_factors"] = std::move(pi1);
        emit(out, format);
      } catch (const reebindex::Error& e) {
        OrderedJson out;
        out["good"] = false;
        out["error"] = e.name();
        out["message"] = e.what();
        emit(out, format);
        throw ReportedExit{1};
      }
    } else if (*cmd_pi1) {
      const reebindex::MomentCone cone =
          reebindex::cone_from_json(reebindex::load_json_file(input));
      OrderedJson out;
      OrderedJson pi1 = OrderedJson::array();
      for (const auto& factor : reebindex::fundamental_group(cone)) {
        pi1.push_back(factor.str());
      }
      out["invariant_factors"] = std::move(pi1);
      emit(out, format);
    } else if (*cmd_hc) {
      const reebindex::MomentCone cone =
          reebindex::cone_from_json(reebindex::load_json_file(input));
      reebindex::check_good_cone(cone);
      const reebindex::ReebVector reeb =
          resolve_reeb(cone, reeb_spec, seed, std::max(64, cutoff + 64));
      const reebindex::HCTable table = reebindex::hc_table(cone, reeb, cutoff);
      OrderedJson out;
      out["seed"] =
          reeb_spec == "auto" ? OrderedJson(seed) : OrderedJson(nullptr);
      out["reeb"] = reebindex::reeb_to_json(reeb);
      out["table"] = reebindex::hc_table_to_json(table);
      emit(out, format);
    } else if (*cmd_reeb) {
      const reebindex::MomentCone cone =
          reebindex::cone_from_json(reebindex::load_json_file(input));
      reebindex::check_good_cone(cone);
      const reebindex::ReebVector parsed =
          reebindex::reeb_from_json(reebindex::load_json_file(reeb_spec), cone);
      const reebindex::ReebVector witness =
          reebindex::is_reeb_vector(cone, parsed.ambient);
      OrderedJson out;
      out["in_interior"] = true;
      out["witness"] = reebindex::reeb_to_json(witness);
      out["vector"] = qsqrt2_strings(witness.ambient);
      emit(out, format);
    } else if (*cmd_orbit) {
      const reebindex::MomentCone cone =
          reebindex::cone_from_json(reebindex::load_json_file(input));
      const reebindex::FaceLattice faces = reebindex::check_good_cone(cone);
      const reebindex::ReebVector reeb = resolve_reeb(cone, reeb_spec, seed, 64);
      const reebindex::EdgeRotationData rotation =
          reebindex::edge_orbit_rotations(cone, faces, reeb, edge);
      const reebindex::EdgeOrbitIndex orbit =
          reebindex::orbit_rs_index(rotation, iterate);
      OrderedJson out;
      out["reeb"] = reebindex::reeb_to_json(reeb);
      out["orbit"] = reebindex::edge_orbit_to_json(rotation, orbit);
      emit(out, format);
    } else if (*cmd_index) {
      const reebindex::SymplecticPath path =
          reebindex::path_from_json(reebindex::load_json_file(input));
      const reebindex::Tolerances t = make_tol(tol);
      OrderedJson out;
      out["index"] =
          reebindex::index_report_to_json(reebindex::index_report(path, 16, t));
      if (want_bott) {
        out["bott"] =
            reebindex::bott_function_to_json(reebindex::bott_function(path, t));
      }
      if (elliptic_j != 0) {
        out["elliptic"] = reebindex::elliptic_certificate_to_json(
            reebindex::elliptic_certificate(path, elliptic_j, t));
      }
      emit(out, format);
    } else if (*cmd_bott) {
      const reebindex::SymplecticPath path =
          reebindex::path_from_json(reebindex::load_json_file(input));
      const reebindex::Tolerances t = make_tol(tol);
      OrderedJson out;
      out["index"] =
          reebindex::index_report_to_json(reebindex::index_report(path, 16, t));
      out["bott"] =
          reebindex::bott_function_to_json(reebindex::bott_function(path, t));
      emit(out, format);
    } else if (*cmd_elliptic) {
      const reebindex::SymplecticPath path =
          reebindex::path_from_json(reebindex::load_json_file(input));
      emit(reebindex::elliptic_certificate_to_json(reebindex::elliptic_certificate(
               path, elliptic_j, make_tol(tol))),
           format);
    } else if (*cmd_pinch) {
      emit(reebindex::pinching_report_to_json(reebindex::pinched_index_bound(
               reebindex::pinching_from_json(reebindex::load_json_file(input)))),
           format);
    } else if (*cmd_prequant) {
      const reebindex::PrequantJob job =
          reebindex::prequant_from_json(reebindex::load_json_file(input));
      emit(reebindex::hc_table_to_json(
               reebindex::prequant_hc(job.data, job.degree_range)),
           format);
    } else if (*cmd_indhr) {
      const reebindex::IndHrJob job =
          reebindex::ind_hr_from_json(reebindex::load_json_file(input));
      OrderedJson out;
      out["x"] = job.S / (kTwoPi * job.R * job.R);
      out["ind_hr"] = reebindex::ind_hr(job.n, job.S, job.R);
      emit(out, format);
    }
  } catch (const ReportedExit& e) {
    return e.code;
  } catch (const reebindex::JsonSchemaError& e) {
    emit_error("JsonSchemaError", e.what(), format);
    return 2;
  } catch (const nlohmann::json::exception& e) {
    emit_error("JsonSchemaError", e.what(), format);
    return 2;
  } catch (const reebindex::Error& e) {
    emit_error(e.name(), e.what(), format);
    return 1;
  } catch (const std::invalid_argument& e) {
    emit_error("InvalidArgument", e.what(), format);
    return 1;
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what(), format);
    return 1;
  }
  return 0;
}
