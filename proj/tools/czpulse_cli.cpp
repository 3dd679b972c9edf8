/* Copyright 2026 The Czpulse Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end. All physics stays dimensionless (omega_max = 1);
// physical units (gauss, MHz, us) are resolved here and only here.
//
// Exit codes: 0 success, 2 config error, 3 infeasible search, 4 internal
// failure. On failure a machine-readable error JSON is printed to stderr.
// Output files are byte-identical for identical config + seed; wall-clock
// timestamps go to the run.log sidecar only.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "czpulse/atom.hpp"
#include "czpulse/dynamics.hpp"
#include "czpulse/error_models.hpp"
#include "czpulse/fidelity.hpp"
#include "czpulse/grape.hpp"
#include "czpulse/io.hpp"
#include "czpulse/pulse.hpp"
#include "czpulse/units.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace czpulse;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Reference minimal-duration values N(ratio): used by the --table1
// comparison columns and as the default N when synthesizing a pulse.
struct ReferenceEntry {
  double ratio;
  double n_min;
};
constexpr ReferenceEntry kReferenceMinN[] = {
    {0.60, 1.843}, {0.65, 1.733}, {0.70, 1.646}, {0.75, 1.568}, {0.80, 1.497},
    {0.85, 1.434}, {0.90, 1.376}, {0.95, 1.325}, {1.00, 1.291},
};

double reference_n(double ratio) {
  for (const ReferenceEntry& e : kReferenceMinN)
    if (std::abs(e.ratio - ratio) < 1e-9) return e.n_min;
  return kNaN;
}

struct GlobalOptions {
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  unsigned workers = 0;
  double b_gauss = kNaN;
  double ratio = kNaN;  // delta_z / omega
  double omega_max_mhz = kNaN;
  double tau_us = kNaN;
  double n_periods = kNaN;
  int segments = 40;
  int restarts = 20;
  int max_iterations = 2000;
  double infidelity_target = 1e-7;
  double stop_infidelity = 0.0;
  double delta_split = 0.5;
  double varsigma0 = kNaN;
  double varsigma = kNaN;
};

// Physical parameters resolved from the (b_gauss, ratio, omega_max_mhz)
// flags. The dimensionless ratio must be determined exactly one way: either
// --ratio, or --b-gauss together with --omega-max-mhz. The physical scale is
// optional for dimensionless commands.
struct Physical {
  double ratio = kNaN;
  double omega_rad_s = kNaN;
  double delta_z_rad_s = kNaN;

  bool has_scale() const { return std::isfinite(omega_rad_s); }
  double duration_s(double n) const { return kTwoPi * n / omega_rad_s; }
};

Physical resolve_physical(const GlobalOptions& g, bool need_ratio) {
  const bool hb = std::isfinite(g.b_gauss);
  const bool hr = std::isfinite(g.ratio);
  const bool ho = std::isfinite(g.omega_max_mhz);
  if (hr && hb && ho)
    throw config_error(
        "over-determined physics: give --ratio, or --b-gauss with --omega-max-mhz, not all "
        "three");

  Physical p;
  const double omega = ho ? mhz_to_rad_per_s(g.omega_max_mhz) : kNaN;
  const double dz_b = hb ? zeeman_splitting({g.b_gauss}) : kNaN;
  if (hr) {
    if (!(g.ratio >= 0.0)) throw config_error("--ratio must be >= 0");
    p.ratio = g.ratio;
    if (ho) {
      p.omega_rad_s = omega;
      p.delta_z_rad_s = g.ratio * omega;
    } else if (hb) {
      p.delta_z_rad_s = dz_b;
      if (g.ratio > 0.0) p.omega_rad_s = dz_b / g.ratio;
    }
  } else if (hb && ho) {
    p.omega_rad_s = omega;
    p.delta_z_rad_s = dz_b;
    p.ratio = dz_b / omega;
  } else if (hb || ho) {
    if (need_ratio)
      throw config_error(
          "cannot determine delta_z/omega: give --ratio, or both --b-gauss and "
          "--omega-max-mhz");
    if (ho) p.omega_rad_s = omega;
    if (hb) p.delta_z_rad_s = dz_b;
  } else if (need_ratio) {
    throw config_error("give --ratio, or --b-gauss together with --omega-max-mhz");
  }
  return p;
}

OptimizationSpec make_spec(const GlobalOptions& g, double ratio, double n_periods) {
  OptimizationSpec spec;
  spec.ratio = ratio;
  spec.n_periods = n_periods;
  spec.segment_count = g.segments;
  spec.restarts = g.restarts;
  spec.max_iterations = g.max_iterations;
  spec.infidelity_target = g.infidelity_target;
  spec.stop_infidelity = g.stop_infidelity;
  spec.seed = g.seed;
  spec.delta_split = g.delta_split;
  spec.workers = g.workers;
  return spec;
}

json base_config(const std::string& command, const GlobalOptions& g, const Physical& p) {
  json c;
  c["command"] = command;
  c["seed"] = g.seed;
  c["workers"] = g.workers;
  c["segments"] = g.segments;
  c["restarts"] = g.restarts;
  c["max_iterations"] = g.max_iterations;
  c["infidelity_target"] = g.infidelity_target;
  if (g.stop_infidelity > 0.0) c["stop_infidelity"] = g.stop_infidelity;
  c["delta_split"] = g.delta_split;
  if (std::isfinite(p.ratio)) c["delta_z_over_omega"] = p.ratio;
  if (std::isfinite(p.omega_rad_s)) c["omega_max_mhz"] = rad_per_s_to_mhz(p.omega_rad_s);
  if (std::isfinite(p.delta_z_rad_s)) {
    c["delta_z_mhz"] = rad_per_s_to_mhz(p.delta_z_rad_s);
    c["b_gauss"] = p.delta_z_rad_s / (kTwoPi * kZeemanHzPerGauss);
  }
  if (std::isfinite(g.tau_us)) c["tau_us"] = g.tau_us;
  return c;
}

std::vector<std::pair<std::string, std::string>> config_comments(const json& config) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& [key, value] : config.items())
    kv.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  return kv;
}

struct OutputWriter {
  fs::path dir;
  std::vector<std::string> files;

  explicit OutputWriter(const std::string& output_dir) : dir(output_dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory: " + output_dir);
  }
  void write(const std::string& name, const std::string& content) {
    write_text_file((dir / name).string(), content);
    files.push_back(name);
  }
};

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The only file carrying wall-clock information.
void write_run_log(OutputWriter& out, const std::string& command, const std::string& started,
                   double elapsed_s) {
  std::string log = "command: " + command + "\n";
  log += "started: " + started + "\n";
  log += "finished: " + timestamp_utc() + "\n";
  log += "elapsed_s: " + format_double(elapsed_s) + "\n";
  log += "files:";
  for (const std::string& f : out.files) log += " " + f;
  log += "\n";
  write_text_file((out.dir / "run.log").string(), log);
}

std::vector<double> parse_ratio_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw config_error("bad ratio list entry: '" + item + "'");
      }
    }
    pos = comma + 1;
  }
  if (out.empty()) throw config_error("empty ratio list");
  return out;
}

// Optimizes a fresh pulse for synthesis-style commands (scan-impurity and
// decay-error without --pulse): flat optimum at N, then optional 10% edges
// with re-optimization.
PhaseProfile synthesize_pulse(const GlobalOptions& g, const Physical& phys, bool edges,
                              json& config) {
  double n = g.n_periods;
  if (!std::isfinite(n)) n = reference_n(phys.ratio);
  if (!std::isfinite(n))
    throw config_error("no reference N for this ratio; pass --n-periods explicitly");

  const OptimizationSpec spec = make_spec(g, phys.ratio, n);
  const LaserConfig laser = make_laser(phys.ratio, g.delta_split);
  OptimizationReport rep = grape_optimize(spec, laser);
  config["synthesized_n_periods"] = n;
  config["synthesized_flat_infidelity"] = rep.best_infidelity;
  PhaseProfile profile = rep.best_profile;
  if (edges) {
    profile = add_standard_edges(profile, n);
    rep = optimize_profile(profile, spec, laser);
    profile = rep.best_profile;
    config["synthesized_edged_infidelity"] = rep.best_infidelity;
  }
  config["synthesized_edges"] = edges;
  return profile;
}

PhaseProfile load_or_synthesize(const std::string& pulse_path, const GlobalOptions& g,
                                const Physical& phys, bool edges, json& config,
                                OutputWriter& out) {
  if (!pulse_path.empty()) {
    config["pulse_file"] = pulse_path;
    return read_pulse_file(pulse_path);
  }
  PhaseProfile p = synthesize_pulse(g, phys, edges, config);
  out.write("pulse_used.json", pulse_to_json(p));
  return p;
}

int run_optimize(const GlobalOptions& g, bool edges) {
  const Physical phys = resolve_physical(g, true);
  if (!std::isfinite(g.n_periods)) throw config_error("optimize requires --n-periods");

  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  const OptimizationSpec spec = make_spec(g, phys.ratio, g.n_periods);
  const LaserConfig laser = make_laser(phys.ratio, g.delta_split);
  OptimizationReport rep = grape_optimize(spec, laser);

  json config = base_config("optimize", g, phys);
  config["n_periods"] = g.n_periods;
  config["edges"] = edges;
  json doc;
  if (edges) {
    doc["flat_stage"] = {{"best_infidelity", rep.best_infidelity}, {"converged", rep.converged}};
    PhaseProfile edged = add_standard_edges(rep.best_profile, g.n_periods);
    rep = optimize_profile(edged, spec, laser);
  }
  doc["config"] = config;
  doc["report"] = json::parse(optimization_report_json(rep));
  if (phys.has_scale())
    doc["duration_ns"] = 1e9 * rep.best_profile.total_duration / phys.omega_rad_s;

  out.write("pulse.json", pulse_to_json(rep.best_profile));
  out.write("report.json", doc.dump(2) + "\n");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "optimize", started, elapsed);
  return 0;
}

int run_min_duration(const GlobalOptions& g, bool table1, double n_low, double n_high,
                     double resolution) {
  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> ratios;
  if (table1) {
    if (std::isfinite(g.ratio))
      throw config_error("--table1 scans the built-in ratios; drop --ratio");
    for (const ReferenceEntry& e : kReferenceMinN) ratios.push_back(e.ratio);
  } else {
    ratios.push_back(resolve_physical(g, true).ratio);
  }

  std::vector<MinDurationRow> rows;
  std::vector<std::pair<double, ProbeRecord>> all_probes;
  json config;
  bool any_infeasible = false;
  for (const double ratio : ratios) {
    GlobalOptions gr = g;
    gr.ratio = ratio;
    const Physical phys = resolve_physical(gr, true);
    if (config.is_null()) {
      config = base_config("min-duration", g, phys);
      config["n_low"] = n_low;
      config["n_high"] = n_high;
      config["resolution"] = resolution;
      config["table1"] = table1;
      if (table1) config.erase("delta_z_over_omega");
    }
    const OptimizationSpec spec = make_spec(g, ratio, n_high);
    const MinDurationResult res =
        min_duration(n_low, n_high, resolution, spec, make_laser(ratio, g.delta_split));

    MinDurationRow row{};
    row.ratio = ratio;
    row.found = res.found;
    row.lower_edge_feasible = res.lower_edge_feasible;
    row.n_min = res.found ? res.n_min : kNaN;
    row.best_infidelity = res.found ? res.best_infidelity : kNaN;
    row.duration_ns =
        res.found && phys.has_scale() ? 1e9 * phys.duration_s(res.n_min) : kNaN;
    row.n_reference = reference_n(ratio);
    rows.push_back(row);
    for (const ProbeRecord& p : res.probes) all_probes.emplace_back(ratio, p);
    if (res.found) {
      out.write("pulse_ratio_" + format_double(ratio) + ".json",
                pulse_to_json(res.best_profile));
    } else {
      any_infeasible = true;
    }
  }

  const std::string comments = comment_lines(config_comments(config));
  out.write("min_duration.csv", comments + min_duration_csv(rows));
  out.write("probes.csv", comments + probes_csv(all_probes));
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "min-duration", started, elapsed);
  if (any_infeasible)
    throw infeasible_error("no feasible duration in [" + format_double(n_low) + ", " +
                           format_double(n_high) + "] for at least one ratio");
  return 0;
}

int run_scan_ratio(const GlobalOptions& g, double duration_pi, const std::string& ratio_list,
                   double ratio_min, double ratio_max, int ratio_count) {
  if (std::isfinite(g.ratio))
    throw config_error("scan-ratio takes --ratios or --ratio-min/max/count, not --ratio");
  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> ratios;
  if (!ratio_list.empty()) {
    ratios = parse_ratio_list(ratio_list);
  } else {
    if (ratio_count < 2) throw config_error("--ratio-count must be >= 2");
    for (int i = 0; i < ratio_count; ++i)
      ratios.push_back(ratio_min + (ratio_max - ratio_min) * i / (ratio_count - 1));
  }

  const double duration = kPi * duration_pi;
  const OptimizationSpec spec = make_spec(g, ratios.front(), duration / kTwoPi);
  const std::vector<RatioScanPoint> points = fixed_duration_scan(duration, ratios, spec);

  json config = base_config("scan-ratio", g, resolve_physical(g, false));
  config["duration_pi"] = duration_pi;
  json jr = json::array();
  for (double r : ratios) jr.push_back(r);
  config["ratios"] = jr;

  out.write("ratio_scan.csv", comment_lines(config_comments(config)) + ratio_scan_csv(points));
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "scan-ratio", started, elapsed);
  return 0;
}

int run_scan_impurity(const GlobalOptions& g, const std::string& pulse_path, bool no_edges,
                      double v0_min, double v0_max, int v0_count, double v_min, double v_max,
                      int v_count) {
  const Physical phys = resolve_physical(g, true);
  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  json config = base_config("scan-impurity", g, phys);
  config["varsigma0_range"] = {v0_min, v0_max, v0_count};
  config["varsigma_range"] = {v_min, v_max, v_count};
  const PhaseProfile profile = load_or_synthesize(pulse_path, g, phys, !no_edges, config, out);

  const LaserConfig laser = make_laser(phys.ratio, g.delta_split);
  const ImpurityScanResult scan =
      impurity_scan(profile, laser, log_spaced(v0_min, v0_max, v0_count),
                    log_spaced(v_min, v_max, v_count), g.workers);

  const std::string comments = comment_lines(config_comments(config));
  out.write("impurity_scan.csv", comments + impurity_scan_csv(scan));
  out.write("impurity_heatmap.txt", comments + impurity_heatmap_text(scan));
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "scan-impurity", started, elapsed);
  return 0;
}

int run_simulate(const GlobalOptions& g, const std::string& pulse_path, int samples) {
  const Physical phys = resolve_physical(g, true);
  if (samples < 2) throw config_error("--samples must be >= 2");
  const bool with_impurity = std::isfinite(g.varsigma0);
  if (with_impurity && !std::isfinite(g.varsigma))
    throw config_error("--varsigma0 requires --varsigma");

  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  const PhaseProfile profile = read_pulse_file(pulse_path);
  const LaserConfig laser = make_laser(phys.ratio, g.delta_split);
  const BasisSet basis = enumerate_basis(with_impurity);
  std::optional<PolarizationImpurity> impurity;
  if (with_impurity) impurity = PolarizationImpurity{g.varsigma0, g.varsigma};
  const std::vector<Coupling> couplings = coupling_table(laser, impurity);

  const PropagationResult prop = propagate(profile, basis, couplings, samples);
  const GateResult gate = gauge_fix(extract_gate_matrix(prop.u_full, basis));
  const double t_ryd = rydberg_time(prop.trajectories);
  const double unitarity =
      (prop.u_full.adjoint() * prop.u_full -
       Eigen::MatrixXcd::Identity(basis.size(), basis.size()))
          .cwiseAbs()
          .maxCoeff();

  json config = base_config("simulate", g, phys);
  config["pulse_file"] = pulse_path;
  config["samples"] = samples;
  if (with_impurity) {
    config["varsigma0"] = g.varsigma0;
    config["varsigma"] = g.varsigma;
  }

  json doc;
  doc["config"] = config;
  doc["gate"] = json::parse(gate_result_json(gate));
  doc["rydberg_time"] = t_ryd;
  doc["unitarity_residual"] = unitarity;
  if (phys.has_scale()) {
    doc["rydberg_time_s"] = t_ryd / phys.omega_rad_s;
    doc["duration_ns"] = 1e9 * profile.total_duration / phys.omega_rad_s;
  }

  out.write("gate.json", doc.dump(2) + "\n");
  out.write("trajectories.csv",
            comment_lines(config_comments(config)) + trajectories_csv(prop.trajectories, basis));
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "simulate", started, elapsed);
  return 0;
}

int run_decay_error(const GlobalOptions& g, const std::string& pulse_path, bool no_edges) {
  const Physical phys = resolve_physical(g, true);
  if (!phys.has_scale())
    throw config_error("decay-error needs a physical scale: --omega-max-mhz or --b-gauss");
  if (!std::isfinite(g.tau_us) || !(g.tau_us > 0.0))
    throw config_error("decay-error requires --tau-us > 0");

  OutputWriter out(g.output_dir);
  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  json config = base_config("decay-error", g, phys);
  const PhaseProfile profile = load_or_synthesize(pulse_path, g, phys, !no_edges, config, out);

  const LaserConfig laser = make_laser(phys.ratio, g.delta_split);
  const BasisSet basis = enumerate_basis(false);
  const PropagationResult prop = propagate(profile, basis, coupling_table(laser));
  const DecayEstimate est =
      decay_error(prop.trajectories, us_to_s(g.tau_us), phys.omega_rad_s);

  json doc;
  doc["config"] = config;
  doc["estimate"] = json::parse(decay_estimate_json(est));
  doc["rydberg_time_dimensionless"] = rydberg_time(prop.trajectories);

  out.write("decay.json", doc.dump(2) + "\n");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_run_log(out, "decay-error", started, elapsed);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Pulse synthesis and simulation for phase-modulated two-qubit entangling gates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "czpulse 0.1.0");
  app.set_config("--config", "", "key=value config file (keys match long option names)");

  GlobalOptions g;
  app.add_option("--output-dir,-o", g.output_dir, "directory for output artifacts")
      ->envname("CZPULSE_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
  app.add_option("--workers", g.workers, "parallel workers (0 = all cores)")
      ->capture_default_str();
  app.add_option("--b-gauss,--b_gauss", g.b_gauss, "magnetic field in gauss");
  app.add_option("--delta-z-over-omega,--ratio,--delta_z_over_omega", g.ratio,
                 "detuning splitting over peak Rabi frequency");
  app.add_option("--omega-max-mhz,--omega_max_mhz", g.omega_max_mhz,
                 "peak Rabi frequency Omega/2pi in MHz");
  app.add_option("--tau-us,--tau_us", g.tau_us, "Rydberg lifetime in microseconds");
  app.add_option("--n-periods,--n_periods", g.n_periods, "gate duration in units of 2pi/Omega");
  app.add_option("--segments", g.segments, "phase segments in the flat region")
      ->capture_default_str();
  app.add_option("--restarts", g.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--max-iterations", g.max_iterations, "iteration cap per restart")
      ->capture_default_str();
  app.add_option("--infidelity-target", g.infidelity_target, "feasibility threshold")
      ->capture_default_str();
  app.add_option("--stop-infidelity", g.stop_infidelity,
                 "early-stop level (0 = target/10)");
  app.add_option("--delta-split", g.delta_split,
                 "detuning split: delta_down = split*delta_z, delta_up = (split-1)*delta_z")
      ->capture_default_str();
  app.add_option("--varsigma0", g.varsigma0, "impurity power fraction (simulate)");
  app.add_option("--varsigma", g.varsigma, "sigma+/sigma- power ratio (simulate)");

  CLI::App* c_opt = app.add_subcommand("optimize", "optimize a pulse at fixed duration");
  bool opt_edges = false;
  c_opt->add_flag("--edges", opt_edges, "add 10% rise/fall edges and re-optimize");
  c_opt->fallthrough();

  CLI::App* c_min = app.add_subcommand("min-duration", "bisect for the minimal feasible N");
  bool table1 = false;
  double n_low = 1.0, n_high = 2.2, resolution = 0.005;
  c_min->add_flag("--table1", table1, "scan the nine built-in reference ratios");
  c_min->add_option("--n-low", n_low, "window lower edge")->capture_default_str();
  c_min->add_option("--n-high", n_high, "window upper edge")->capture_default_str();
  c_min->add_option("--resolution", resolution, "bisection resolution in N")
      ->capture_default_str();
  c_min->fallthrough();

  CLI::App* c_scan = app.add_subcommand("scan-ratio", "fidelity vs ratio at fixed duration");
  double duration_pi = 3.0, ratio_min = 0.55, ratio_max = 1.0;
  int ratio_count = 10;
  std::string ratio_list;
  c_scan->add_option("--duration-pi", duration_pi, "duration in units of pi/Omega")
      ->capture_default_str();
  c_scan->add_option("--ratios", ratio_list, "comma-separated ratio list");
  c_scan->add_option("--ratio-min", ratio_min, "")->capture_default_str();
  c_scan->add_option("--ratio-max", ratio_max, "")->capture_default_str();
  c_scan->add_option("--ratio-count", ratio_count, "")->capture_default_str();
  c_scan->fallthrough();

  CLI::App* c_imp = app.add_subcommand("scan-impurity", "fidelity over the impurity grid");
  std::string imp_pulse;
  bool imp_no_edges = false;
  double v0_min = 1e-4, v0_max = 1e-2, v_min = 0.1, v_max = 10.0;
  int v0_count = 25, v_count = 25;
  c_imp->add_option("--pulse", imp_pulse, "pulse JSON (default: synthesize)");
  c_imp->add_flag("--no-edges", imp_no_edges, "synthesize without rise/fall edges");
  c_imp->add_option("--varsigma0-min", v0_min, "")->capture_default_str();
  c_imp->add_option("--varsigma0-max", v0_max, "")->capture_default_str();
  c_imp->add_option("--varsigma0-count", v0_count, "")->capture_default_str();
  c_imp->add_option("--varsigma-min", v_min, "")->capture_default_str();
  c_imp->add_option("--varsigma-max", v_max, "")->capture_default_str();
  c_imp->add_option("--varsigma-count", v_count, "")->capture_default_str();
  c_imp->fallthrough();

  CLI::App* c_sim = app.add_subcommand("simulate", "propagate a pulse and report the gate");
  std::string sim_pulse;
  int samples = kDefaultSamples;
  c_sim->add_option("--pulse", sim_pulse, "pulse JSON file")->required();
  c_sim->add_option("--samples", samples, "trajectory samples")->capture_default_str();
  c_sim->fallthrough();

  CLI::App* c_dec = app.add_subcommand("decay-error", "perturbative Rydberg-decay estimate");
  std::string dec_pulse;
  bool dec_no_edges = false;
  c_dec->add_option("--pulse", dec_pulse, "pulse JSON (default: synthesize)");
  c_dec->add_flag("--no-edges", dec_no_edges, "synthesize without rise/fall edges");
  c_dec->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw config_error(e.what());
  }

  if (app.got_subcommand(c_opt)) return run_optimize(g, opt_edges);
  if (app.got_subcommand(c_min)) return run_min_duration(g, table1, n_low, n_high, resolution);
  if (app.got_subcommand(c_scan))
    return run_scan_ratio(g, duration_pi, ratio_list, ratio_min, ratio_max, ratio_count);
  if (app.got_subcommand(c_imp))
    return run_scan_impurity(g, imp_pulse, imp_no_edges, v0_min, v0_max, v0_count, v_min, v_max,
                             v_count);
  if (app.got_subcommand(c_sim)) return run_simulate(g, sim_pulse, samples);
  if (app.got_subcommand(c_dec)) return run_decay_error(g, dec_pulse, dec_no_edges);
  throw config_error("no command given");
}

int fail(const char* type, const std::string& message, int code) {
  json j{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const config_error& e) {
    return fail("config", e.what(), 2);
  } catch (const infeasible_error& e) {
    return fail("infeasible", e.what(), 3);
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 4);
  }
}
