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

#include "czpulse/pulse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "czpulse/units.hpp"

namespace czpulse {

double PhaseProfile::flat_duration() const {
  double t = total_duration;
  if (edge) t -= edge->rise_duration + edge->fall_duration;
  return t;
}

static double ramp(EdgeShape shape, double x) {
  // x in [0, 1], rising 0 -> 1
  switch (shape) {
    case EdgeShape::linear: return x;
    case EdgeShape::sine_squared: {
      const double s = std::sin(0.5 * kPi * x);
      return s * s;
    }
  }
  throw std::logic_error("bad edge shape");
}

double PhaseProfile::envelope(double t) const {
  if (t < 0.0 || t > total_duration) return 0.0;
  if (edge) {
    if (edge->rise_duration > 0.0 && t < edge->rise_duration)
      return ramp(edge->shape, t / edge->rise_duration);
    if (edge->fall_duration > 0.0 && t > total_duration - edge->fall_duration)
      return ramp(edge->shape, (total_duration - t) / edge->fall_duration);
  }
  return 1.0;
}

void PhaseProfile::validate() const {
  if (!std::isfinite(total_duration) || total_duration <= 0.0)
    throw std::invalid_argument("total_duration must be positive and finite");
  if (!std::isfinite(omega_max) || omega_max < 0.0)
    throw std::invalid_argument("omega_max must be finite and >= 0");
  if (segments.empty()) throw std::invalid_argument("profile needs at least one segment");
  double sum = 0.0;
  for (const PhaseSegment& s : segments) {
    if (!std::isfinite(s.duration) || s.duration <= 0.0)
      throw std::invalid_argument("segment durations must be positive and finite");
    if (!std::isfinite(s.phase)) throw std::invalid_argument("segment phases must be finite");
    sum += s.duration;
  }
  if (edge) {
    if (!std::isfinite(edge->rise_duration) || edge->rise_duration < 0.0 ||
        !std::isfinite(edge->fall_duration) || edge->fall_duration < 0.0)
      throw std::invalid_argument("edge durations must be >= 0 and finite");
    if (!std::isfinite(edge->phase_start) || !std::isfinite(edge->phase_end))
      throw std::invalid_argument("edge phases must be finite");
    sum += edge->rise_duration + edge->fall_duration;
  }
  if (std::abs(sum - total_duration) > 1e-9 * total_duration)
    throw std::invalid_argument("segment and edge durations must sum to total_duration");
}

void PhaseProfile::shift_phases(double offset) {
  for (PhaseSegment& s : segments) s.phase += offset;
  if (edge) {
    edge->phase_start += offset;
    edge->phase_end += offset;
  }
}

PhaseProfile uniform_profile(double total_duration, const std::vector<double>& phases) {
  if (phases.empty()) throw std::invalid_argument("need at least one phase");
  PhaseProfile p;
  p.total_duration = total_duration;
  const double dt = total_duration / static_cast<double>(phases.size());
  p.segments.reserve(phases.size());
  for (double phi : phases) p.segments.push_back({dt, phi});
  p.validate();
  return p;
}

const char* edge_shape_name(EdgeShape s) {
  return s == EdgeShape::linear ? "linear" : "sine_squared";
}

EdgeShape edge_shape_from_name(const std::string& name) {
  if (name == "linear") return EdgeShape::linear;
  if (name == "sine_squared") return EdgeShape::sine_squared;
  throw std::invalid_argument("unknown edge shape: " + name);
}

}  // namespace czpulse
