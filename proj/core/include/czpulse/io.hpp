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

// File formats: pulse JSON round-trip, result JSON documents and the CSV
// writers shared by the command-line tool. All emitted text is byte-stable
// for identical inputs (no timestamps, fixed float formatting).

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "czpulse/dynamics.hpp"
#include "czpulse/error_models.hpp"
#include "czpulse/fidelity.hpp"
#include "czpulse/grape.hpp"
#include "czpulse/pulse.hpp"

namespace czpulse {

// Bad user input (flags, config files, malformed pulse files). Mapped to
// exit code 2 by the CLI.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search completed but found no solution (e.g. no feasible duration in the
// window). Mapped to exit code 3 by the CLI.
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed "%.12g" rendering used in all CSV output.
std::string format_double(double v);

// Pulse file schema (JSON object):
//   {"omega_max": 1.0, "total_duration": T,
//    "segments": [{"duration": d, "phase": p}, ...],
//    "edge": null | {"rise_duration": r, "fall_duration": f,
//                    "edge_shape": "sine_squared"|"linear",
//                    "edge_phase_start": a, "edge_phase_end": b}}
// pulse_from_json throws config_error on malformed documents and validates
// the resulting profile.
std::string pulse_to_json(const PhaseProfile& profile);
PhaseProfile pulse_from_json(const std::string& text);
void write_pulse_file(const std::string& path, const PhaseProfile& profile);
PhaseProfile read_pulse_file(const std::string& path);

// {"m_matrix": 4x4 of [re, im], "alpha", "beta", "epsilon", "a", "b", "c",
//  "fidelity", "fidelity_vs_cz_raw", "offdiag_max_abs"}
std::string gate_result_json(const GateResult& gate);

// Report without the per-iteration traces; embeds the best gate.
std::string optimization_report_json(const OptimizationReport& report);

std::string decay_estimate_json(const DecayEstimate& estimate);

// "# key=value" metadata lines (one per pair) prepended to CSV files.
std::string comment_lines(const std::vector<std::pair<std::string, std::string>>& kv);

// Columns: time,input_state,ground_population,ground_phase,rydberg_population
// grouped by input (uu, ud, du, dd), time ascending within each group. The
// ground columns track the amplitude on the input's own computational state.
std::string trajectories_csv(const std::vector<Trajectory>& trajectories, const BasisSet& basis);

// Columns: ratio,N,fidelity,infidelity,log10_infidelity,restarts_converged
std::string ratio_scan_csv(const std::vector<RatioScanPoint>& points);

// Columns: varsigma0,varsigma,fidelity in grid order (varsigma0 slow).
std::string impurity_scan_csv(const ImpurityScanResult& scan);

// Matrix layout: rows = varsigma0 (ascending), columns = varsigma
// (ascending), space-separated; axis values in '#' comment lines.
std::string impurity_heatmap_text(const ImpurityScanResult& scan);

struct MinDurationRow {
  double ratio;
  double n_min;            // NaN when not found
  double best_infidelity;  // NaN when not found
  bool found;
  bool lower_edge_feasible;
  double duration_ns;  // NaN when no physical scale is configured
  double n_reference;  // NaN when no reference entry exists
};

// Columns: ratio,n_min,best_infidelity,found,lower_edge_feasible,
//          duration_ns,n_reference,n_delta
std::string min_duration_csv(const std::vector<MinDurationRow>& rows);

// Columns: ratio,n_periods,best_infidelity,feasible (all probes of a search).
std::string probes_csv(const std::vector<std::pair<double, ProbeRecord>>& probes);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines without the newline
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parses CSV text as written by the functions above (no quoting/escaping).
CsvTable parse_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace czpulse
