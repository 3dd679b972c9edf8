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

#include "czpulse/atom.hpp"

#include <cmath>
#include <stdexcept>

#include "czpulse/units.hpp"

namespace czpulse {

int polarization_q(Polarization p) {
  switch (p) {
    case Polarization::pi: return 0;
    case Polarization::sigma_plus: return +1;
    case Polarization::sigma_minus: return -1;
  }
  throw std::logic_error("bad polarization");
}

Level make_level(LevelLabel label) {
  switch (label) {
    case LevelLabel::g_up: return {label, +0.5};
    case LevelLabel::g_down: return {label, -0.5};
    case LevelLabel::r_up: return {label, +0.5};
    case LevelLabel::r_down: return {label, -0.5};
    case LevelLabel::r_plus: return {label, +1.5};
    case LevelLabel::r_minus: return {label, -1.5};
  }
  throw std::logic_error("bad level label");
}

const char* level_name(LevelLabel label) {
  switch (label) {
    case LevelLabel::g_up: return "g_up";
    case LevelLabel::g_down: return "g_down";
    case LevelLabel::r_up: return "r_up";
    case LevelLabel::r_down: return "r_down";
    case LevelLabel::r_plus: return "r_plus";
    case LevelLabel::r_minus: return "r_minus";
  }
  return "?";
}

double zeeman_splitting(MagneticField b) {
  if (b.b_gauss < 0.0) throw std::invalid_argument("magnetic field must be >= 0");
  return kTwoPi * kZeemanHzPerGauss * b.b_gauss;
}

LaserConfig LaserConfig::symmetric(double omega_max, double delta_z) {
  return with_split(omega_max, delta_z, 0.5);
}

LaserConfig LaserConfig::with_split(double omega_max, double delta_z, double split) {
  LaserConfig cfg;
  cfg.omega_max = omega_max;
  cfg.delta_z = delta_z;
  cfg.delta_down = split * delta_z;
  cfg.delta_up = (split - 1.0) * delta_z;
  cfg.validate();
  return cfg;
}

void LaserConfig::validate() const {
  if (!(omega_max > 0.0)) throw std::invalid_argument("omega_max must be > 0");
  if (!(delta_z >= 0.0)) throw std::invalid_argument("delta_z must be >= 0");
  if (std::abs(std::abs(delta_up - delta_down) - delta_z) > 1e-12 * (1.0 + delta_z))
    throw std::invalid_argument("delta_z must equal |delta_up - delta_down|");
}

void PolarizationImpurity::validate() const {
  if (!(varsigma0 >= 0.0)) throw std::invalid_argument("varsigma0 must be >= 0");
  if (!(varsigma > 0.0)) throw std::invalid_argument("varsigma must be > 0");
}

double clebsch_gordan_factor(double m_f, int q) {
  // <1/2 m; 1 q | 3/2 m+q>, stretched-coupling case j = j1 + 1:
  //   q = +1: sqrt((j1+m+1)(j1+m+2) / ((2j1+1)(2j1+2)))
  //   q =  0: sqrt((j1-m+1)(j1+m+1) / ((2j1+1)(j1+1)))
  //   q = -1: sqrt((j1-m+1)(j1-m+2) / ((2j1+1)(2j1+2)))
  const bool up = m_f > 0.0;
  if (std::abs(m_f) != 0.5) throw std::invalid_argument("ground m_f must be +-1/2");
  switch (q) {
    case 0: return std::sqrt(2.0 / 3.0);
    case +1: return up ? 1.0 : std::sqrt(1.0 / 3.0);
    case -1: return up ? std::sqrt(1.0 / 3.0) : 1.0;
  }
  throw std::invalid_argument("q must be 0 or +-1");
}

std::vector<Coupling> coupling_table(const LaserConfig& laser,
                                     const std::optional<PolarizationImpurity>& impurity) {
  laser.validate();
  const double half = 0.5 * laser.omega_max;

  std::vector<Coupling> table;
  table.push_back({make_level(LevelLabel::g_up), make_level(LevelLabel::r_up),
                   Polarization::pi, half, laser.delta_up});
  table.push_back({make_level(LevelLabel::g_down), make_level(LevelLabel::r_down),
                   Polarization::pi, half, laser.delta_down});

  if (!impurity) return table;
  impurity->validate();
  if (impurity->varsigma0 == 0.0) return table;

  const double c_pi = clebsch_gordan_factor(+0.5, 0);
  auto sigma = [&](LevelLabel g, LevelLabel r, Polarization pol, double detuning) {
    const Level ground = make_level(g);
    const Level rydberg = make_level(r);
    const int q = polarization_q(pol);
    const double p_q = q > 0 ? impurity->power_sigma_plus() : impurity->power_sigma_minus();
    const double ratio = clebsch_gordan_factor(ground.m_f, q) / c_pi;
    table.push_back({ground, rydberg, pol, half * std::sqrt(p_q) * ratio, detuning});
  };
  sigma(LevelLabel::g_up, LevelLabel::r_plus, Polarization::sigma_plus,
        laser.delta_up - laser.delta_z);
  sigma(LevelLabel::g_up, LevelLabel::r_down, Polarization::sigma_minus, laser.delta_down);
  sigma(LevelLabel::g_down, LevelLabel::r_up, Polarization::sigma_plus, laser.delta_up);
  sigma(LevelLabel::g_down, LevelLabel::r_minus, Polarization::sigma_minus,
        laser.delta_down + laser.delta_z);
  return table;
}

int BasisSet::index_of(const Level& a1, const Level& a2) const {
  for (int i = 0; i < size(); ++i) {
    if (states[i].atom1 == a1 && states[i].atom2 == a2) return i;
  }
  return -1;
}

BasisSet enumerate_basis(bool impurity_enabled) {
  const Level gu = make_level(LevelLabel::g_up);
  const Level gd = make_level(LevelLabel::g_down);
  std::vector<Level> rydberg = {make_level(LevelLabel::r_up), make_level(LevelLabel::r_down)};
  if (impurity_enabled) {
    rydberg.push_back(make_level(LevelLabel::r_plus));
    rydberg.push_back(make_level(LevelLabel::r_minus));
  }
  const std::array<Level, 2> ground = {gu, gd};

  BasisSet basis;
  basis.impurity_levels = impurity_enabled;
  basis.states = {{gu, gu}, {gu, gd}, {gd, gu}, {gd, gd}};
  basis.computational_indices = {0, 1, 2, 3};
  for (const Level& r : rydberg)
    for (const Level& g : ground) basis.states.push_back({r, g});
  for (const Level& g : ground)
    for (const Level& r : rydberg) basis.states.push_back({g, r});
  return basis;
}

}  // namespace czpulse
