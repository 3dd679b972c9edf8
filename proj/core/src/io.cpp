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

#include "czpulse/io.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace czpulse {

using json = nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

json edge_to_json(const PulseEdge& e) {
  return json{{"rise_duration", e.rise_duration},
              {"fall_duration", e.fall_duration},
              {"edge_shape", edge_shape_name(e.shape)},
              {"edge_phase_start", e.phase_start},
              {"edge_phase_end", e.phase_end}};
}

json pulse_json(const PhaseProfile& p) {
  json segments = json::array();
  for (const PhaseSegment& s : p.segments)
    segments.push_back(json{{"duration", s.duration}, {"phase", s.phase}});
  json doc{{"omega_max", p.omega_max},
           {"total_duration", p.total_duration},
           {"segments", std::move(segments)}};
  doc["edge"] = p.edge ? edge_to_json(*p.edge) : json(nullptr);
  return doc;
}

json gate_json(const GateResult& g) {
  json m = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c)
      row.push_back(json::array({g.m_matrix(r, c).real(), g.m_matrix(r, c).imag()}));
    m.push_back(std::move(row));
  }
  return json{{"m_matrix", std::move(m)},
              {"alpha", g.alpha},
              {"beta", g.beta},
              {"epsilon", g.epsilon},
              {"a", g.a},
              {"b", g.b},
              {"c", g.c},
              {"fidelity", g.fidelity},
              {"fidelity_vs_cz_raw", g.fidelity_vs_cz_raw},
              {"offdiag_max_abs", g.offdiag_max_abs}};
}

}  // namespace

std::string pulse_to_json(const PhaseProfile& profile) { return pulse_json(profile).dump(2) + "\n"; }

PhaseProfile pulse_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("pulse file is not valid JSON: ") + e.what());
  }
  PhaseProfile p;
  try {
    p.omega_max = doc.at("omega_max").get<double>();
    p.total_duration = doc.at("total_duration").get<double>();
    for (const json& s : doc.at("segments"))
      p.segments.push_back({s.at("duration").get<double>(), s.at("phase").get<double>()});
    if (doc.contains("edge") && !doc.at("edge").is_null()) {
      const json& e = doc.at("edge");
      p.edge = PulseEdge{e.at("rise_duration").get<double>(), e.at("fall_duration").get<double>(),
                         edge_shape_from_name(e.at("edge_shape").get<std::string>()),
                         e.at("edge_phase_start").get<double>(),
                         e.at("edge_phase_end").get<double>()};
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("pulse file does not match the schema: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("pulse file does not match the schema: ") + e.what());
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("pulse file is inconsistent: ") + e.what());
  }
  return p;
}

void write_pulse_file(const std::string& path, const PhaseProfile& profile) {
  write_text_file(path, pulse_to_json(profile));
}

PhaseProfile read_pulse_file(const std::string& path) {
  return pulse_from_json(read_text_file(path));
}

std::string gate_result_json(const GateResult& gate) { return gate_json(gate).dump(2) + "\n"; }

std::string optimization_report_json(const OptimizationReport& report) {
  json doc{{"best_infidelity", report.best_infidelity},
           {"best_fidelity", 1.0 - report.best_infidelity},
           {"converged", report.converged},
           {"best_restart", report.best_restart},
           {"restarts_run", report.per_restart_infidelities.size()},
           {"per_restart_infidelities", report.per_restart_infidelities},
           {"iterations_used", report.iterations_used},
           {"gate", gate_json(report.best_gate)}};
  return doc.dump(2) + "\n";
}

std::string decay_estimate_json(const DecayEstimate& estimate) {
  json doc{{"rydberg_time_s", estimate.rydberg_time_s},
           {"tau_s", estimate.tau_s},
           {"error", estimate.error}};
  return doc.dump(2) + "\n";
}

std::string comment_lines(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [key, value] : kv) out += "# " + key + "=" + value + "\n";
  return out;
}

std::string trajectories_csv(const std::vector<Trajectory>& trajectories, const BasisSet& basis) {
  static const char* kInputNames[4] = {"uu", "ud", "du", "dd"};
  std::string out = "time,input_state,ground_population,ground_phase,rydberg_population\n";
  for (const Trajectory& tr : trajectories) {
    if (tr.input_index < 0 || tr.input_index > 3)
      throw std::invalid_argument("trajectory input_index out of range");
    const int home = basis.computational_indices[static_cast<std::size_t>(tr.input_index)];
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const std::complex<double> amp = tr.states[i](home);
      out += format_double(tr.times[i]);
      out += ',';
      out += kInputNames[tr.input_index];
      out += ',';
      out += format_double(std::norm(amp));
      out += ',';
      out += format_double(std::arg(amp));
      out += ',';
      out += format_double(tr.rydberg_population[i]);
      out += '\n';
    }
  }
  return out;
}

std::string ratio_scan_csv(const std::vector<RatioScanPoint>& points) {
  std::string out = "ratio,N,fidelity,infidelity,log10_infidelity,restarts_converged\n";
  for (const RatioScanPoint& p : points) {
    const double lg = std::log10(std::max(p.infidelity, std::numeric_limits<double>::min()));
    out += format_double(p.ratio) + "," + format_double(p.n_periods) + "," +
           format_double(p.fidelity) + "," + format_double(p.infidelity) + "," +
           format_double(lg) + "," + std::to_string(p.restarts_converged) + "\n";
  }
  return out;
}

std::string impurity_scan_csv(const ImpurityScanResult& scan) {
  std::string out = "varsigma0,varsigma,fidelity\n";
  for (const ImpurityPoint& p : scan.grid)
    out += format_double(p.varsigma0) + "," + format_double(p.varsigma) + "," +
           format_double(p.fidelity) + "\n";
  return out;
}

std::string impurity_heatmap_text(const ImpurityScanResult& scan) {
  std::string out = "# rows: varsigma0 (ascending); columns: varsigma (ascending)\n";
  out += "# varsigma0:";
  for (double v : scan.varsigma0) out += " " + format_double(v);
  out += "\n# varsigma:";
  for (double v : scan.varsigma) out += " " + format_double(v);
  out += "\n";
  const std::size_t cols = scan.varsigma.size();
  for (std::size_t i = 0; i < scan.varsigma0.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ' ';
      out += format_double(scan.grid[i * cols + j].fidelity);
    }
    out += '\n';
  }
  return out;
}

std::string min_duration_csv(const std::vector<MinDurationRow>& rows) {
  std::string out =
      "ratio,n_min,best_infidelity,found,lower_edge_feasible,duration_ns,n_reference,n_delta\n";
  for (const MinDurationRow& r : rows) {
    out += format_double(r.ratio) + "," + format_double(r.n_min) + "," +
           format_double(r.best_infidelity) + "," + (r.found ? "1" : "0") + "," +
           (r.lower_edge_feasible ? "1" : "0") + "," + format_double(r.duration_ns) + "," +
           format_double(r.n_reference) + "," + format_double(r.n_min - r.n_reference) + "\n";
  }
  return out;
}

std::string probes_csv(const std::vector<std::pair<double, ProbeRecord>>& probes) {
  std::string out = "ratio,n_periods,best_infidelity,feasible\n";
  for (const auto& [ratio, p] : probes)
    out += format_double(ratio) + "," + format_double(p.n_periods) + "," +
           format_double(p.best_infidelity) + "," + (p.feasible ? "1" : "0") + "\n";
  return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.comments.push_back(line);
    } else if (!have_header) {
      table.header = split_commas(line);
      have_header = true;
    } else {
      table.rows.push_back(split_commas(line));
    }
  }
  return table;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace czpulse
