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

// Gradient optimization of the segment phases at fixed duration, plus the
// outer searches: minimal gate duration (bisection over N) and fixed-duration
// fidelity scans over the detuning ratio.

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "czpulse/atom.hpp"
#include "czpulse/fidelity.hpp"
#include "czpulse/pulse.hpp"

namespace czpulse {

// Gate duration is 2*pi*n_periods / omega_max (dimensionless: omega_max = 1,
// so the flat duration is 2*pi*n_periods and ratio = delta_z).
struct OptimizationSpec {
  double ratio = 0.8;        // delta_z / omega_max
  double n_periods = 1.5;    // N; flat duration = 2*pi*N
  int segment_count = 40;
  int restarts = 20;
  int max_iterations = 2000;
  double infidelity_target = 1e-7;
  std::uint64_t seed = 1;
  double delta_split = 0.5;  // delta_down = split*delta_z, delta_up = (split-1)*delta_z
  unsigned workers = 0;      // parallel restart workers; 0 = hardware concurrency
  double stop_infidelity = 0.0;  // early-stop level; 0 = infidelity_target / 10

  // segment_count >= 2, restarts >= 1, infidelity_target in (0,1) and the
  // remaining positivity constraints; throws std::invalid_argument.
  void validate() const;
  double stop_threshold() const {
    return stop_infidelity > 0.0 ? stop_infidelity : infidelity_target / 10.0;
  }
};

// Dimensionless drive for a spec: omega_max = 1, delta_z = ratio, detunings
// split per delta_split.
LaserConfig make_laser(double ratio, double delta_split = 0.5);

struct OptimizationReport {
  PhaseProfile best_profile;
  double best_infidelity = 1.0;
  std::vector<double> per_restart_infidelities;  // one per restart actually run
  std::vector<int> iterations_used;
  bool converged = false;  // best_infidelity < spec.infidelity_target
  int best_restart = -1;
  GateResult best_gate;  // gauge-fixed diagnostics of the best pulse
  // Objective (infidelity) after every accepted step, per restart.
  // Non-increasing by line-search construction.
  std::vector<std::vector<double>> traces;
};

// Multi-start gradient optimization of the flat-segment phases of a fresh
// uniform profile (duration 2*pi*N, spec.segment_count segments). Restart 0
// starts from the all-zero phase vector, the rest from uniform random phases
// derived from spec.seed. Deterministic given the spec: restarts run in
// fixed-size waves with ordered gathering, independent of worker count.
OptimizationReport grape_optimize(const OptimizationSpec& spec, const LaserConfig& laser);

// Same engine, but starting from an existing profile: restart 0 uses the
// profile's own phases; segment durations, total duration and edges are held
// fixed. When the profile has edges, each edge phase stays tied to its
// adjacent flat segment throughout (the gradient accounts for it exactly).
OptimizationReport optimize_profile(const PhaseProfile& initial, const OptimizationSpec& spec,
                                    const LaserConfig& laser);

// Infidelity of a profile as evaluated inside the optimizer (phase-mask
// propagation; agrees with the eigendecomposition route to ~1e-12), and its
// analytic gradient over the segment phases. Exposed for verification and
// for reporting on loaded pulses.
double pulse_infidelity(const PhaseProfile& profile, const LaserConfig& laser);
double pulse_infidelity_gradient(const PhaseProfile& profile, const LaserConfig& laser,
                                 std::vector<double>& grad);

// Wraps a flat profile with amplitude rise/fall ramps of the given durations
// at constant phase (tied to the first/last segment phase). Total duration
// grows by rise + fall. Zero durations return the input unchanged.
PhaseProfile add_edges(const PhaseProfile& profile, double rise_duration, double fall_duration,
                       EdgeShape shape = EdgeShape::sine_squared);

// The standard 10% ramp: rise = fall = pi*N/10, so the total duration becomes
// 1.1 x 2*pi*N. Requires profile.total_duration == 2*pi*N (no prior edges).
PhaseProfile add_standard_edges(const PhaseProfile& profile, double n_periods,
                                EdgeShape shape = EdgeShape::sine_squared);

struct ProbeRecord {
  double n_periods;
  double best_infidelity;
  bool feasible;  // best_infidelity < infidelity_target
};

struct MinDurationResult {
  bool found = false;                // a feasible N exists in the window
  bool lower_edge_feasible = false;  // the window's lower edge was already feasible
  double n_min = std::numeric_limits<double>::quiet_NaN();
  double best_infidelity = std::numeric_limits<double>::quiet_NaN();
  PhaseProfile best_profile;  // optimal pulse at n_min (valid iff found)
  std::vector<ProbeRecord> probes;
};

// Bisection for the smallest N with best infidelity below the target,
// assuming feasibility is monotone in N. Probes both window edges, bisects to
// the requested resolution, then re-probes the final midpoint with doubled
// restarts. found == false means no gate exists in the window.
MinDurationResult min_duration(double n_low, double n_high, double resolution,
                               const OptimizationSpec& spec, const LaserConfig& laser);

struct RatioScanPoint {
  double ratio;
  double n_periods;
  double fidelity;
  double infidelity;
  int restarts_converged;  // restarts that individually met the target
};

// Optimizes at fixed total duration (N = duration / 2*pi) for each ratio.
// spec.ratio is overridden per point; the laser is rebuilt per point with
// spec.delta_split.
std::vector<RatioScanPoint> fixed_duration_scan(double duration, const std::vector<double>& ratios,
                                                const OptimizationSpec& spec);

}  // namespace czpulse
