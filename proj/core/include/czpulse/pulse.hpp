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

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace czpulse {

enum class EdgeShape { linear, sine_squared };

struct PhaseSegment {
  double duration;
  double phase;
};

// Optional amplitude rise/fall ramps around the flat region. The laser phase
// is constant over each edge (phase_start on the rise, phase_end on the
// fall); the amplitude ramps 0 -> 1 over the rise and 1 -> 0 over the fall.
struct PulseEdge {
  double rise_duration;
  double fall_duration;
  EdgeShape shape = EdgeShape::sine_squared;
  double phase_start = 0.0;
  double phase_end = 0.0;
};

// Piecewise-constant laser phase schedule, the optimization variable.
// Amplitude contract: omega_max inside the flat region, ramping through the
// edges when present. Time is in units of 1/Omega_max; omega_max is a
// dimensionless scale (1 for a full-power pulse, 0 for a dark pulse).
struct PhaseProfile {
  double total_duration = 0.0;
  double omega_max = 1.0;
  std::vector<PhaseSegment> segments;
  std::optional<PulseEdge> edge;

  double flat_duration() const;
  // Amplitude envelope (before the omega_max scale) at time t from pulse
  // start; 1 in the flat region, the ramp shape inside an edge.
  double envelope(double t) const;

  // Checks positivity, finiteness and that segment + edge durations add up
  // to total_duration. Throws std::invalid_argument on violation.
  void validate() const;

  // Adds a constant to every phase, edges included.
  void shift_phases(double offset);
};

// Flat profile with equal-duration segments carrying the given phases.
PhaseProfile uniform_profile(double total_duration, const std::vector<double>& phases);

const char* edge_shape_name(EdgeShape s);
EdgeShape edge_shape_from_name(const std::string& name);

}  // namespace czpulse
