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

#include <numbers>

namespace czpulse {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zeeman splitting slope of the qubit-Rydberg transition pair, Hz per gauss.
inline constexpr double kZeemanHzPerGauss = 1.9e6;

// All core computations are dimensionless with the peak Rabi frequency
// Omega_max = 1 and time measured in 1/Omega_max. Physical units enter only
// at the CLI boundary through the helpers below.
inline constexpr double mhz_to_rad_per_s(double mhz) { return kTwoPi * mhz * 1e6; }
inline constexpr double rad_per_s_to_mhz(double w) { return w / (kTwoPi * 1e6); }
inline constexpr double us_to_s(double us) { return us * 1e-6; }
inline constexpr double s_to_ns(double s) { return s * 1e9; }

}  // namespace czpulse
