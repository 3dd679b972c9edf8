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

// Two-atom Hamiltonian on the blockade-truncated basis and piecewise-constant
// Schrodinger propagation with trajectory sampling.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "czpulse/atom.hpp"
#include "czpulse/pulse.hpp"

namespace czpulse {

// Number of edge sub-steps used to resolve the amplitude ramp; each sub-step
// uses the mid-point amplitude and an exact constant-Hamiltonian propagator.
inline constexpr int kEdgeSubsteps = 32;

// Default number of uniform trajectory samples.
inline constexpr int kDefaultSamples = 512;

// Rotating-frame two-atom Hamiltonian. Off-diagonal blocks carry
// amplitude_scale * half_rabi * e^{i phase} on ground -> Rydberg elements
// (per atom, identity on the spectator), Hermitian conjugates filled in.
// Each Rydberg level contributes -detuning to the diagonal of every basis
// state containing it; the ground-ground diagonal is zero.
//
// Throws std::invalid_argument if a coupling references a level absent from
// the basis, if two couplings assign different detunings to one level, or if
// amplitude_scale is outside [0, 1].
Eigen::MatrixXcd assemble_hamiltonian(const BasisSet& basis,
                                      const std::vector<Coupling>& couplings,
                                      double phase, double amplitude_scale);

// One constant-Hamiltonian stretch of the pulse.
struct PropagationInterval {
  double dt;
  double phase;
  double amplitude;  // envelope x omega_max
};

// Expands a profile into constant-Hamiltonian intervals (edges subdivided
// into kEdgeSubsteps mid-point sub-steps).
std::vector<PropagationInterval> build_intervals(const PhaseProfile& profile);

// Time-ordered product of exact segment propagators exp(-i H_k dt_k),
// earliest factor rightmost. Unitary to machine precision.
Eigen::MatrixXcd evolution_operator(const PhaseProfile& profile, const BasisSet& basis,
                                    const std::vector<Coupling>& couplings);

// Sampled state history for one computational input.
struct Trajectory {
  int input_index = 0;               // 0..3: uu, ud, du, dd
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> rydberg_population;  // total population in Rydberg-bearing states
};

struct PropagationResult {
  Eigen::MatrixXcd u_full;
  std::vector<Trajectory> trajectories;  // one per computational input
};

// Full evolution operator plus uniformly sampled trajectories of the four
// computational inputs. sample_count >= 2.
PropagationResult propagate(const PhaseProfile& profile, const BasisSet& basis,
                            const std::vector<Coupling>& couplings,
                            int sample_count = kDefaultSamples);

// Input-averaged integral of the Rydberg population over the pulse,
// trapezoidal rule on the common sample grid. Throws on mismatched grids.
double rydberg_time(const std::vector<Trajectory>& trajectories);

}  // namespace czpulse
