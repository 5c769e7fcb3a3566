// Command-line front end: builds the level-2 CNOT extended rectangle and
// drives the Monte Carlo harness and the fault-tolerance verification
// suites. Exit codes: 0 success, 1 runtime failure or verification
// violation, 2 usage/config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpec/sim.hpp"
#include "mpec/verifier.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json census_json(const mpec::Circuit& c) {
  auto cens = c.census();
  json j;
  j["total"] = cens.total;
  j["prep_z"] = cens.by_kind[0];
  j["prep_x"] = cens.by_kind[1];
  j["meas_z"] = cens.by_kind[2];
  j["meas_x"] = cens.by_kind[3];
  j["cnot"] = cens.by_kind[4];
  j["memory"] = cens.by_kind[5];
  j["qubits"] = cens.qubits;
  j["builder_version"] = mpec::kBuilderVersion;
  j["content_hash"] = c.content_hash();
  j["reference_census"] = mpec::kReferenceExrecCensus;
  j["deviation_ratio"] =
      static_cast<double>(cens.total) / mpec::kReferenceExrecCensus;
  return j;
}

int cmd_census(const std::string& out_path) {
  auto circuit = mpec::build_level2_cnot_exrec();
  json j = census_json(circuit);
  std::cout << j.dump(1) << "\n";
  if (!out_path.empty()) write_file(out_path, j.dump(1));
  return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<uint64_t> seed,
              std::optional<std::string> decoder,
              std::optional<std::string> mode, std::optional<int> workers,
              std::optional<std::string> out) {
  std::string text = config_path.empty() ? "{}" : read_file(config_path);
  json j = json::parse(text);
  // flag > file > default
  if (seed) j["seed"] = *seed;
  if (decoder) j["decoder"] = *decoder;
  if (mode) j["mode"] = *mode;
  if (workers) j["workers"] = *workers;
  if (out) j["out_csv"] = *out;
  mpec::SweepConfig cfg = mpec::parse_sweep_config(j.dump());

  int64_t started = mpec::unix_ms_now();
  auto circuit = mpec::build_level2_cnot_exrec();
  auto points = mpec::run_sweep(circuit, cfg);
  std::string csv = mpec::points_to_csv(points);
  std::string csv_path = cfg.out_csv.empty() ? "sweep.csv" : cfg.out_csv;
  write_file(csv_path, csv);
  std::string manifest_path = cfg.out_manifest.empty()
                                  ? csv_path + ".manifest.json"
                                  : cfg.out_manifest;
  write_file(manifest_path,
             mpec::sweep_manifest_json(circuit, cfg, csv_path, started));
  std::cout << "wrote " << csv_path << " and " << manifest_path << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_path,
               int max_weight, int chain_boxes, int chain_schedules,
               uint64_t seed) {
  json report;
  bool ok = true;
  if (suite == "boxcases") {
    auto rep = mpec::enumerate_box_cases(max_weight);
    report["suite"] = "boxcases";
    report["max_weight"] = rep.max_weight;
    report["cases"] = rep.cases;
    report["condition_violations"] = rep.condition_violations;
    report["fs_only_failures"] = rep.fs_only_failures;
    report["failures_at_max"] = rep.failures_at_max;
    report["found_masked_double_ff"] = rep.found_masked_double_ff;
    report["found_fs_pair_masks_uf"] = rep.found_fs_pair_masks_uf;
    json samples = json::array();
    for (const auto& v : rep.violation_samples) {
      json s;
      s["a"] = v.a;
      s["b"] = v.b;
      s["c"] = v.c;
      s["syndrome"] = v.syndrome;
      samples.push_back(s);
    }
    report["violation_samples"] = samples;
    ok = rep.condition_violations == 0 && rep.fs_only_failures == 0;
    if (max_weight <= 4) ok = ok && rep.failures_at_max == 0;
  } else if (suite == "golden") {
    auto circuit = mpec::build_level2_cnot_exrec();
    auto results = mpec::replay_all_goldens(circuit);
    report["suite"] = "golden";
    json cases = json::array();
    for (const auto& r : results) {
      json cj;
      cj["name"] = mpec::golden_name(r.which);
      cj["ok"] = r.ok;
      cj["abstract_mp_pass"] = r.abstract_mp_pass;
      cj["abstract_std_pass"] = r.abstract_std_pass;
      cj["phys_mp_pass"] = r.phys_mp_pass;
      cj["phys_std_pass"] = r.phys_std_pass;
      cj["match_size"] = r.match_size;
      cj["used_fallback"] = r.used_fallback;
      if (!r.detail.empty()) cj["detail"] = r.detail;
      cases.push_back(cj);
      ok = ok && r.ok;
    }
    report["cases"] = cases;
  } else if (suite == "chain") {
    auto rep = mpec::chain_success_check(chain_boxes, chain_schedules, seed);
    report["suite"] = "chain";
    report["boxes"] = chain_boxes;
    report["schedules_run"] = rep.schedules_run;
    report["boxes_run"] = rep.boxes_run;
    report["box_failures"] = rep.box_failures;
    report["premise_ok"] = rep.premise_ok;
    report["invariant_ok"] = rep.invariant_ok;
    report["all_succeeded"] = rep.all_succeeded;
    report["max_a_plus_b"] = rep.max_a_plus_b;
    ok = rep.premise_ok && rep.invariant_ok && rep.all_succeeded;
  } else {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  report["ok"] = ok;
  std::cout << report.dump(1) << "\n";
  if (!out_path.empty()) write_file(out_path, report.dump(1));
  return ok ? 0 : 1;
}

int cmd_curve(const std::string& rtable_path, double p_min, double p_max,
              int points, int truncation, const std::string& out_path) {
  if (p_min <= 0 || p_max < p_min || points < 1)
    throw std::invalid_argument("bad p range");
  auto circuit = mpec::build_level2_cnot_exrec();
  uint64_t n = circuit.hot.size();
  auto tables = mpec::parse_rtable_csv(read_file(rtable_path), truncation);

  std::string csv = "p,decoder,p2,lo2sigma,hi2sigma\n";
  char buf[256];
  for (int k = 0; k < points; ++k) {
    double f = points == 1 ? 0 : static_cast<double>(k) / (points - 1);
    double p = p_min * std::pow(p_max / p_min, f);
    for (const auto& [dec, table] : tables) {
      auto band = mpec::failure_polynomial_band(table.r, table.sigma, n, p,
                                                truncation);
      std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%.17g\n", p,
                    mpec::decoder_name(dec), band.mean, band.lo, band.hi);
      csv += buf;
    }
  }
  write_file(out_path, csv);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concatenated Bacon-Shor message-passing EC simulator"};
  app.require_subcommand(1);

  auto* census = app.add_subcommand("census", "location census of the exrec");
  std::string census_out;
  census->add_option("--out", census_out, "also write JSON here");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo failure-rate sweep");
  std::string sweep_config;
  std::optional<uint64_t> sweep_seed;
  std::optional<std::string> sweep_decoder, sweep_mode, sweep_out;
  std::optional<int> sweep_workers;
  sweep->add_option("--config", sweep_config, "JSON config file");
  sweep->add_option("--seed", sweep_seed, "override seed");
  sweep->add_option("--decoder", sweep_decoder, "standard|mpec|both");
  sweep->add_option("--mode", sweep_mode, "direct|fixed");
  sweep->add_option("--workers", sweep_workers, "worker threads");
  sweep->add_option("--out", sweep_out, "output CSV path");

  auto* verify = app.add_subcommand("verify", "fault-tolerance suites");
  std::string suite, verify_out;
  int max_weight = 4, chain_boxes = 100, chain_schedules = 1000;
  uint64_t verify_seed = 2024;
  verify->add_option("--suite", suite, "boxcases|golden|chain")->required();
  verify->add_option("--out", verify_out, "write JSON report here");
  verify->add_option("--max-weight", max_weight, "enumeration weight cap");
  verify->add_option("--chain-boxes", chain_boxes, "EC boxes per chain");
  verify->add_option("--chain-schedules", chain_schedules, "random schedules");
  verify->add_option("--seed", verify_seed, "chain schedule seed");

  auto* curve = app.add_subcommand("curve", "failure polynomial from r-table");
  std::string rtable, curve_out = "curve.csv";
  double p_min = 1e-7, p_max = 1e-3;
  int curve_points = 25, curve_trunc = 12;
  curve->add_option("--rtable", rtable, "fixed-weight sweep CSV")->required();
  curve->add_option("--p-min", p_min, "lowest p");
  curve->add_option("--p-max", p_max, "highest p");
  curve->add_option("--points", curve_points, "grid points (log spaced)");
  curve->add_option("--truncation", curve_trunc, "highest i used");
  curve->add_option("--out", curve_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (census->parsed()) return cmd_census(census_out);
    if (sweep->parsed())
      return cmd_sweep(sweep_config, sweep_seed, sweep_decoder, sweep_mode,
                       sweep_workers, sweep_out);
    if (verify->parsed())
      return cmd_verify(suite, verify_out, max_weight, chain_boxes,
                        chain_schedules, verify_seed);
    if (curve->parsed())
      return cmd_curve(rtable, p_min, p_max, curve_points, curve_trunc,
                       curve_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
