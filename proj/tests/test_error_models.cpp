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

#include <cmath>

#include <doctest.h>

#include "czpulse/error_models.hpp"
#include "czpulse/grape.hpp"
#include "czpulse/units.hpp"

using namespace czpulse;

namespace {

// One shared, cheaply optimized edged pulse for the impurity tests (built
// once; the surface checks only need a good pulse, not a record one).
const PhaseProfile& good_pulse() {
  static const PhaseProfile profile = [] {
    OptimizationSpec spec;
    spec.ratio = 0.8;
    spec.n_periods = 1.6;
    spec.segment_count = 20;
    spec.restarts = 3;
    spec.max_iterations = 1500;
    spec.seed = 2;
    OptimizationReport flat = grape_optimize(spec, make_laser(0.8));
    REQUIRE(flat.best_infidelity < 1e-6);
    PhaseProfile edged = add_standard_edges(flat.best_profile, spec.n_periods);
    OptimizationReport rep = optimize_profile(edged, spec, make_laser(0.8));
    REQUIRE(rep.best_infidelity < 1e-6);
    return rep.best_profile;
  }();
  return profile;
}

}  // namespace

TEST_CASE("decay estimates are linear in the excited time") {
  const DecayEstimate e = decay_error_from_time(4.0e-8, 1.0e-4);
  CHECK(e.error == doctest::Approx(4.0e-4).epsilon(1e-12));
  CHECK(e.rydberg_time_s == doctest::Approx(4.0e-8));
  CHECK(e.tau_s == doctest::Approx(1.0e-4));
  CHECK(decay_error_from_time(0.0, 1.0e-4).error == doctest::Approx(0.0));

  CHECK_THROWS_AS(decay_error_from_time(1.0e-8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(decay_error_from_time(1.0e-8, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(decay_error_from_time(-1.0e-8, 1.0), std::invalid_argument);
}

TEST_CASE("decay error converts dimensionless time through omega") {
  // Synthetic trajectory: constant Rydberg population 0.5 for two units of
  // dimensionless time integrates to 1.0 exactly under the trapezoid rule.
  Trajectory tr;
  tr.input_index = 0;
  tr.times = {0.0, 1.0, 2.0};
  tr.rydberg_population = {0.5, 0.5, 0.5};
  const std::vector<Trajectory> trs{tr, tr, tr, tr};

  const double omega = kTwoPi * 5.0e6;
  const double tau = 100.0e-6;
  const DecayEstimate e = decay_error(trs, tau, omega);
  CHECK(e.rydberg_time_s == doctest::Approx(1.0 / omega).epsilon(1e-12));
  CHECK(e.error == doctest::Approx(1.0 / (omega * tau)).epsilon(1e-12));

  CHECK_THROWS_AS(decay_error(trs, tau, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(decay_error(trs, -1.0, omega), std::invalid_argument);
}

TEST_CASE("log spacing hits the endpoints exactly") {
  const std::vector<double> g = log_spaced(1e-4, 1e-2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1e-4);  // exact, not approximate
  CHECK(g.back() == 1e-2);
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] / g[i - 1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));

  CHECK(log_spaced(0.3, 5.0, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(1.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("zero impurity reduces to the pure-polarization fidelity") {
  const PhaseProfile& p = good_pulse();
  const LaserConfig laser = make_laser(0.8);

  const double f_pure = 1.0 - pulse_infidelity(p, laser);
  const double f0 = impurity_fidelity(p, laser, PolarizationImpurity{0.0, 0.1});
  CHECK(std::abs(f0 - f_pure) < 1e-12);

  // The spectral ratio is irrelevant when there is no impure power at all.
  for (double varsigma : {0.5, 1.0, 10.0})
    CHECK(impurity_fidelity(p, laser, PolarizationImpurity{0.0, varsigma}) == f0);  // bitwise
}

TEST_CASE("impurity never helps and the surface is smooth") {
  const PhaseProfile& p = good_pulse();
  const LaserConfig laser = make_laser(0.8);
  const double f0 = impurity_fidelity(p, laser, PolarizationImpurity{0.0, 1.0});

  const std::vector<double> v0s = log_spaced(1e-4, 1e-2, 4);
  const std::vector<double> vs = log_spaced(0.1, 10.0, 3);
  std::vector<double> grid;
  for (double v0 : v0s)
    for (double v : vs) {
      const double f = impurity_fidelity(p, laser, PolarizationImpurity{v0, v});
      CHECK(f <= f0 + 1e-9);
      grid.push_back(f);
    }

  // The loss scales near-linearly with the impure power: one grid step
  // multiplies varsigma0 by ~4.64, so the infidelity may not grow by more
  // than ~that factor (8x leaves slack for the varsigma-dependent mix).
  for (std::size_t i = 0; i + vs.size() < grid.size(); ++i)
    CHECK(1.0 - grid[i + vs.size()] < 8.0 * (1.0 - grid[i]) + 1e-9);

  // More impure power at fixed spectral ratio monotonically hurts.
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 1; i < v0s.size(); ++i)
      CHECK(grid[i * vs.size() + j] <= grid[(i - 1) * vs.size() + j] + 1e-9);
}

TEST_CASE("impurity scan fills the grid in row-major order") {
  const PhaseProfile& p = good_pulse();
  const LaserConfig laser = make_laser(0.8);
  const std::vector<double> v0s = log_spaced(3e-4, 3e-3, 3);
  const std::vector<double> vs = log_spaced(0.1, 10.0, 2);

  const ImpurityScanResult scan = impurity_scan(p, laser, v0s, vs, 1);
  CHECK(scan.varsigma0 == v0s);
  CHECK(scan.varsigma == vs);
  REQUIRE(scan.grid.size() == v0s.size() * vs.size());
  for (std::size_t i = 0; i < v0s.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const ImpurityPoint& pt = scan.grid[i * vs.size() + j];
      CHECK(pt.varsigma0 == v0s[i]);
      CHECK(pt.varsigma == vs[j]);
      // Grid entries agree bitwise with independent pointwise evaluation.
      CHECK(pt.fidelity ==
            impurity_fidelity(p, laser, PolarizationImpurity{v0s[i], vs[j]}));
    }
  }

  // Worker count must not change anything.
  const ImpurityScanResult scan2 = impurity_scan(p, laser, v0s, vs, 2);
  for (std::size_t k = 0; k < scan.grid.size(); ++k)
    CHECK(scan.grid[k].fidelity == scan2.grid[k].fidelity);

  CHECK_THROWS_AS(impurity_scan(p, laser, {}, vs, 1), std::invalid_argument);
}
