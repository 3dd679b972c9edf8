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

// Perturbative Rydberg-decay error estimate and the polarization-impurity
// fidelity surface.

#pragma once

#include <vector>

#include "czpulse/atom.hpp"
#include "czpulse/dynamics.hpp"
#include "czpulse/pulse.hpp"

namespace czpulse {

// Decay is treated perturbatively: the gate error is the input-averaged
// integrated Rydberg population divided by the Rydberg lifetime tau. Both
// times are in the same unit (seconds at the CLI boundary).
struct DecayEstimate {
  double rydberg_time_s = 0.0;
  double tau_s = 0.0;
  double error = 0.0;  // rydberg_time_s / tau_s
};

// Estimate from the four computational-input trajectories. Trajectory times
// are dimensionless (units of 1/omega); omega_rad_s converts them to the
// unit of tau_s. Throws std::invalid_argument for tau_s <= 0 or
// omega_rad_s <= 0.
DecayEstimate decay_error(const std::vector<Trajectory>& trajectories, double tau_s,
                          double omega_rad_s);

// Same estimate from an already-converted Rydberg time.
DecayEstimate decay_error_from_time(double rydberg_time_s, double tau_s);

// Gauge-fixed gate fidelity of a fixed pulse propagated on the
// impurity-extended (20-state) basis. With varsigma0 = 0 this equals the
// impurity-free fidelity.
double impurity_fidelity(const PhaseProfile& profile, const LaserConfig& laser,
                         const PolarizationImpurity& impurity);

struct ImpurityPoint {
  double varsigma0;
  double varsigma;
  double fidelity;
};

// Full rectangular grid, row-major with varsigma0 as the slow axis:
// grid[i * varsigma.size() + j] belongs to (varsigma0[i], varsigma[j]).
struct ImpurityScanResult {
  std::vector<double> varsigma0;
  std::vector<double> varsigma;
  std::vector<ImpurityPoint> grid;
};

// Evaluates impurity_fidelity over the full grid; points run in parallel and
// are gathered in grid order. workers = 0 uses hardware concurrency.
ImpurityScanResult impurity_scan(const PhaseProfile& profile, const LaserConfig& laser,
                                 const std::vector<double>& varsigma0_range,
                                 const std::vector<double>& varsigma_range, unsigned workers = 0);

// count >= 2 geometrically spaced values with exact endpoints (count == 1
// returns {lo}). Requires 0 < lo <= hi.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace czpulse
