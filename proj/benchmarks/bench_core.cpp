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

// Microbenchmarks for the hot paths: full-pulse propagation on both bases,
// the optimizer's objective and gradient, gauge fixing, and one
// impurity-grid point.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "czpulse/atom.hpp"
#include "czpulse/dynamics.hpp"
#include "czpulse/error_models.hpp"
#include "czpulse/fidelity.hpp"
#include "czpulse/grape.hpp"
#include "czpulse/pulse.hpp"
#include "czpulse/units.hpp"

namespace {

using namespace czpulse;

std::vector<double> random_phases(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& p : out) p = dist(rng);
  return out;
}

const LaserConfig& laser() {
  static const LaserConfig l = make_laser(0.8);
  return l;
}

const PhaseProfile& flat_pulse() {
  static const PhaseProfile p = uniform_profile(kTwoPi * 1.5, random_phases(40, 7));
  return p;
}

const PhaseProfile& edged_pulse() {
  static const PhaseProfile p = add_standard_edges(flat_pulse(), 1.5);
  return p;
}

void BM_EvolutionFlat(benchmark::State& state) {
  const BasisSet basis = enumerate_basis(false);
  const auto coup = coupling_table(laser());
  for (auto _ : state) benchmark::DoNotOptimize(evolution_operator(flat_pulse(), basis, coup));
}
BENCHMARK(BM_EvolutionFlat);

void BM_EvolutionEdgedImpurity(benchmark::State& state) {
  const BasisSet basis = enumerate_basis(true);
  const auto coup = coupling_table(laser(), PolarizationImpurity{1e-3, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(evolution_operator(edged_pulse(), basis, coup));
}
BENCHMARK(BM_EvolutionEdgedImpurity);

void BM_PulseInfidelity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pulse_infidelity(edged_pulse(), laser()));
}
BENCHMARK(BM_PulseInfidelity);

void BM_PulseGradient(benchmark::State& state) {
  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pulse_infidelity_gradient(edged_pulse(), laser(), grad));
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_PulseGradient);

void BM_GaugeFix(benchmark::State& state) {
  const BasisSet basis = enumerate_basis(false);
  const auto coup = coupling_table(laser());
  const Eigen::Matrix4cd m =
      extract_gate_matrix(evolution_operator(flat_pulse(), basis, coup), basis);
  for (auto _ : state) benchmark::DoNotOptimize(gauge_fix(m));
}
BENCHMARK(BM_GaugeFix);

void BM_ImpurityFidelityPoint(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        impurity_fidelity(edged_pulse(), laser(), PolarizationImpurity{1e-3, 1.0}));
}
BENCHMARK(BM_ImpurityFidelityPoint);

}  // namespace

BENCHMARK_MAIN();
