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

// Atomic level structure, laser parameters, selection-rule coupling table and
// the blockade-truncated two-atom basis.
//
// Level scheme: the qubit lives in the two nuclear-spin sublevels of the
// clock state, |up> = m_F = +1/2 and |down> = m_F = -1/2. A single linearly
// (pi) polarized field couples them to the F' = 3/2 Rydberg sublevels
// |r_up>, |r_down> (m_F = +-1/2). Polarization-impure sigma+- components
// additionally reach |r_plus>, |r_minus> (m_F = +-3/2) and cross-couple the
// qubit states to the opposite Rydberg sublevel.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace czpulse {

enum class LevelLabel : std::uint8_t {
  g_up,     // clock m_F = +1/2
  g_down,   // clock m_F = -1/2
  r_up,     // Rydberg m_F = +1/2
  r_down,   // Rydberg m_F = -1/2
  r_plus,   // Rydberg m_F = +3/2
  r_minus,  // Rydberg m_F = -3/2
};

enum class Polarization : std::uint8_t { pi, sigma_plus, sigma_minus };

// Spherical component q of the field: 0 for pi, +1/-1 for sigma+-.
int polarization_q(Polarization p);

struct Level {
  LevelLabel label;
  double m_f;  // half-integer magnetic quantum number

  bool is_rydberg() const {
    return label != LevelLabel::g_up && label != LevelLabel::g_down;
  }
  bool operator==(const Level&) const = default;
};

// Builds the level with its fixed m_F quantum number.
Level make_level(LevelLabel label);

const char* level_name(LevelLabel label);

struct MagneticField {
  double b_gauss;
};

// Delta_Z = 2*pi * 1.9e6 * B rad/s. Throws std::invalid_argument for B < 0.
double zeeman_splitting(MagneticField b);

// Scalar drive parameters. delta_up/delta_down are the laser detunings at
// |r_up>/|r_down>; delta_z = |delta_up - delta_down| always holds.
//
// Sign convention (fixed globally): a level with detuning Delta contributes
// -Delta to its diagonal in the rotating frame, so delta_down = +Delta_Z/2
// places |r_down> at -Delta_Z/2. All results are invariant under a global
// sign flip of the detunings combined with complex conjugation.
struct LaserConfig {
  double omega_max;   // peak Rabi frequency Omega
  double delta_up;    // detuning at |r_up>
  double delta_down;  // detuning at |r_down>
  double delta_z;     // |delta_up - delta_down|

  // Symmetric split: delta_down = +delta_z/2, delta_up = -delta_z/2.
  static LaserConfig symmetric(double omega_max, double delta_z);
  // General split: delta_down = split*delta_z, delta_up = (split-1)*delta_z.
  // split = 0.5 reproduces symmetric().
  static LaserConfig with_split(double omega_max, double delta_z, double split);

  // Checks omega_max > 0, delta_z >= 0 and the delta_z identity.
  void validate() const;
};

// Polarization impurity of the drive. The power ratio between the pi, sigma+
// and sigma- components is 1 : varsigma0*varsigma/(1+varsigma) :
// varsigma0/(1+varsigma).
struct PolarizationImpurity {
  double varsigma0;  // wrong-field power relative to the desired pi field
  double varsigma;   // sigma+ / sigma- power ratio within the wrong field

  double power_pi() const { return 1.0; }
  double power_sigma_plus() const { return varsigma0 * varsigma / (1.0 + varsigma); }
  double power_sigma_minus() const { return varsigma0 / (1.0 + varsigma); }

  // varsigma0 >= 0 and varsigma > 0; throws std::invalid_argument otherwise.
  void validate() const;
};

// One ground -> Rydberg transition driven by the field component with the
// given polarization. half_rabi is the coupling amplitude before the
// time-dependent laser phase; detuning is the laser detuning at the Rydberg
// level (a property of the level, shared by every coupling into it).
struct Coupling {
  Level ground;
  Level rydberg;
  Polarization polarization;
  double half_rabi;
  double detuning;
};

// Clebsch-Gordan factor <1/2 m_f; 1 q | 3/2 m_f+q> of the F=1/2 -> F'=3/2
// transition. Both pi lines share C_pi = sqrt(2/3); that factor is absorbed
// into omega_max, so pi couplings use half_rabi = omega/2 and the sigma
// couplings carry the ratio C_q/C_pi.
double clebsch_gordan_factor(double m_f, int q);

// The coupling list for the drive. Without impurity: the two pi lines
// (g_up -> r_up at delta_up, g_down -> r_down at delta_down), each with
// half_rabi = omega/2. With impurity, additionally the four sigma lines:
//   g_up   -> r_plus   (sigma+, detuning delta_up - delta_z)
//   g_up   -> r_down   (sigma-, detuning delta_down)
//   g_down -> r_up     (sigma+, detuning delta_up)
//   g_down -> r_minus  (sigma-, detuning delta_down + delta_z)
// each with half_rabi = (omega/2) * sqrt(p_q) * C_q/C_pi. An impurity with
// varsigma0 = 0 yields exactly the impurity-free table.
std::vector<Coupling> coupling_table(const LaserConfig& laser,
                                     const std::optional<PolarizationImpurity>& impurity = {});

struct TwoAtomState {
  Level atom1;
  Level atom2;

  int rydberg_count() const {
    return (atom1.is_rydberg() ? 1 : 0) + (atom2.is_rydberg() ? 1 : 0);
  }
  bool operator==(const TwoAtomState&) const = default;
};

// Blockade-truncated two-atom basis: no state carries two Rydberg
// excitations. Ordering is deterministic:
//   [0..3]   ground-ground in the canonical order uu, ud, du, dd
//   then atom-1 excited, (r, g) with r outer in (r_up, r_down[, r_plus,
//   r_minus]) and g inner in (g_up, g_down)
//   then atom-2 excited, (g, r) with g outer and r inner, same sublevel
//   orders.
// 12 states without impurity levels, 20 with them.
struct BasisSet {
  std::vector<TwoAtomState> states;
  std::array<int, 4> computational_indices;  // uu, ud, du, dd
  bool impurity_levels = false;

  int size() const { return static_cast<int>(states.size()); }
  // Index of the state (a1, a2), or -1 when absent.
  int index_of(const Level& a1, const Level& a2) const;
};

BasisSet enumerate_basis(bool impurity_enabled);

}  // namespace czpulse
