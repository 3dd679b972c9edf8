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

#include "czpulse/error_models.hpp"

#include <cmath>
#include <stdexcept>

#include "czpulse/fidelity.hpp"
#include "czpulse/parallel.hpp"

namespace czpulse {

DecayEstimate decay_error_from_time(double rydberg_time_s, double tau_s) {
  if (!(tau_s > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(rydberg_time_s >= 0.0)) throw std::invalid_argument("rydberg time must be >= 0");
  return {rydberg_time_s, tau_s, rydberg_time_s / tau_s};
}

DecayEstimate decay_error(const std::vector<Trajectory>& trajectories, double tau_s,
                          double omega_rad_s) {
  if (!(omega_rad_s > 0.0)) throw std::invalid_argument("omega must be positive");
  return decay_error_from_time(rydberg_time(trajectories) / omega_rad_s, tau_s);
}

double impurity_fidelity(const PhaseProfile& profile, const LaserConfig& laser,
                         const PolarizationImpurity& impurity) {
  impurity.validate();
  const BasisSet basis = enumerate_basis(true);
  const std::vector<Coupling> couplings = coupling_table(laser, impurity);
  const Eigen::MatrixXcd u = evolution_operator(profile, basis, couplings);
  return gauge_fidelity_detail(extract_gate_matrix(u, basis)).fidelity;
}

ImpurityScanResult impurity_scan(const PhaseProfile& profile, const LaserConfig& laser,
                                 const std::vector<double>& varsigma0_range,
                                 const std::vector<double>& varsigma_range, unsigned workers) {
  if (varsigma0_range.empty() || varsigma_range.empty())
    throw std::invalid_argument("impurity scan ranges must be non-empty");
  profile.validate();
  laser.validate();

  ImpurityScanResult result;
  result.varsigma0 = varsigma0_range;
  result.varsigma = varsigma_range;
  const std::size_t cols = varsigma_range.size();
  result.grid.resize(varsigma0_range.size() * cols);

  parallel_for(result.grid.size(), workers, [&](std::size_t idx) {
    const double v0 = varsigma0_range[idx / cols];
    const double v = varsigma_range[idx % cols];
    result.grid[idx] = {v0, v, impurity_fidelity(profile, laser, {v0, v})};
  });
  return result;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("need 0 < lo <= hi");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  out.front() = lo;
  if (count == 1) return out;
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 1; i + 1 < count; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(i * step);
  out.back() = hi;
  return out;
}

}  // namespace czpulse
