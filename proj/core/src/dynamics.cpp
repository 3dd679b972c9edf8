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

#include "czpulse/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unordered_map>

namespace czpulse {

using std::complex;
using cd = complex<double>;
static constexpr cd kI(0.0, 1.0);

Eigen::MatrixXcd assemble_hamiltonian(const BasisSet& basis,
                                      const std::vector<Coupling>& couplings,
                                      double phase, double amplitude_scale) {
  if (!(amplitude_scale >= 0.0 && amplitude_scale <= 1.0 + 1e-12))
    throw std::invalid_argument("amplitude_scale must lie in [0, 1]");
  const int n = basis.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);

  // Per-level detuning map; couplings into one level must agree.
  std::unordered_map<int, double> detuning;
  for (const Coupling& c : couplings) {
    const int key = static_cast<int>(c.rydberg.label);
    auto [it, inserted] = detuning.try_emplace(key, c.detuning);
    if (!inserted && std::abs(it->second - c.detuning) > 1e-12)
      throw std::invalid_argument("inconsistent detunings for one Rydberg level");
    // Every coupled level must be reachable somewhere in the basis.
    bool ground_found = false, rydberg_found = false;
    for (const TwoAtomState& s : basis.states) {
      if (s.atom1 == c.ground || s.atom2 == c.ground) ground_found = true;
      if (s.atom1 == c.rydberg || s.atom2 == c.rydberg) rydberg_found = true;
    }
    if (!ground_found || !rydberg_found)
      throw std::invalid_argument("coupling references a level absent from the basis");
  }

  for (int i = 0; i < n; ++i) {
    const TwoAtomState& s = basis.states[i];
    for (const Level& lvl : {s.atom1, s.atom2}) {
      if (!lvl.is_rydberg()) continue;
      auto it = detuning.find(static_cast<int>(lvl.label));
      if (it != detuning.end()) h(i, i) -= it->second;
    }
  }

  const cd drive = amplitude_scale * std::exp(kI * phase);
  for (const Coupling& c : couplings) {
    for (int col = 0; col < n; ++col) {
      const TwoAtomState& from = basis.states[col];
      // Excite atom 1, spectator atom 2 untouched (and vice versa).
      if (from.atom1 == c.ground) {
        const int row = basis.index_of(c.rydberg, from.atom2);
        if (row >= 0) h(row, col) += c.half_rabi * drive;
      }
      if (from.atom2 == c.ground) {
        const int row = basis.index_of(from.atom1, c.rydberg);
        if (row >= 0) h(row, col) += c.half_rabi * drive;
      }
    }
  }
  // Hermitian completion: the loop above only filled g -> r elements.
  h = (h + h.adjoint()).eval();
  for (int i = 0; i < n; ++i) h(i, i) *= 0.5;
  return h;
}

std::vector<PropagationInterval> build_intervals(const PhaseProfile& profile) {
  profile.validate();
  std::vector<PropagationInterval> out;
  const double amp = profile.omega_max;
  if (profile.edge && profile.edge->rise_duration > 0.0) {
    const double dt = profile.edge->rise_duration / kEdgeSubsteps;
    for (int j = 0; j < kEdgeSubsteps; ++j) {
      const double t_mid = (j + 0.5) * dt;
      out.push_back({dt, profile.edge->phase_start, amp * profile.envelope(t_mid)});
    }
  }
  for (const PhaseSegment& s : profile.segments) out.push_back({s.duration, s.phase, amp});
  if (profile.edge && profile.edge->fall_duration > 0.0) {
    const double dt = profile.edge->fall_duration / kEdgeSubsteps;
    const double t0 = profile.total_duration - profile.edge->fall_duration;
    for (int j = 0; j < kEdgeSubsteps; ++j) {
      const double t_mid = t0 + (j + 0.5) * dt;
      out.push_back({dt, profile.edge->phase_end, amp * profile.envelope(t_mid)});
    }
  }
  return out;
}

namespace {

struct EigH {
  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;

  Eigen::MatrixXcd propagator(double dt) const {
    const Eigen::VectorXcd ph =
        ((-kI * dt) * evals.cast<cd>().array()).exp().matrix();
    return evecs * ph.asDiagonal() * evecs.adjoint();
  }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double dt) const {
    const Eigen::VectorXcd coeff = evecs.adjoint() * psi;
    const Eigen::VectorXcd ph =
        ((-kI * dt) * evals.cast<cd>().array()).exp().matrix();
    return evecs * ph.cwiseProduct(coeff);
  }
};

EigH decompose(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

Eigen::MatrixXcd evolution_operator(const PhaseProfile& profile, const BasisSet& basis,
                                    const std::vector<Coupling>& couplings) {
  const auto intervals = build_intervals(profile);
  const int n = basis.size();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (const PropagationInterval& iv : intervals) {
    const EigH eig = decompose(assemble_hamiltonian(basis, couplings, iv.phase, iv.amplitude));
    u = (eig.propagator(iv.dt) * u).eval();
  }
  return u;
}

PropagationResult propagate(const PhaseProfile& profile, const BasisSet& basis,
                            const std::vector<Coupling>& couplings, int sample_count) {
  if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");
  const auto intervals = build_intervals(profile);
  const int n = basis.size();
  const double total = profile.total_duration;

  PropagationResult result;
  result.u_full = Eigen::MatrixXcd::Identity(n, n);

  std::vector<double> ryd_mask(n);
  for (int i = 0; i < n; ++i)
    ryd_mask[i] = basis.states[i].rydberg_count() > 0 ? 1.0 : 0.0;

  std::vector<Eigen::VectorXcd> psi(4);
  result.trajectories.resize(4);
  for (int k = 0; k < 4; ++k) {
    psi[k] = Eigen::VectorXcd::Zero(n);
    psi[k](basis.computational_indices[k]) = 1.0;
    result.trajectories[k].input_index = k;
    result.trajectories[k].times.reserve(sample_count);
    result.trajectories[k].states.reserve(sample_count);
    result.trajectories[k].rydberg_population.reserve(sample_count);
  }

  auto record = [&](double t) {
    for (int k = 0; k < 4; ++k) {
      Trajectory& tr = result.trajectories[k];
      tr.times.push_back(t);
      tr.states.push_back(psi[k]);
      double p = 0.0;
      for (int i = 0; i < n; ++i) p += ryd_mask[i] * std::norm(psi[k](i));
      tr.rydberg_population.push_back(p);
    }
  };

  const double sample_dt = total / (sample_count - 1);
  int next_sample = 0;
  record(0.0);
  ++next_sample;

  double t = 0.0;
  for (const PropagationInterval& iv : intervals) {
    const EigH eig = decompose(assemble_hamiltonian(basis, couplings, iv.phase, iv.amplitude));
    const double t_end = t + iv.dt;
    // Record samples that fall inside this interval (exact partial steps).
    while (next_sample < sample_count) {
      const double ts = next_sample * sample_dt;
      if (ts > t_end + 1e-12 * total) break;
      const double tau = ts - t;
      for (int k = 0; k < 4; ++k) {
        Eigen::VectorXcd at_sample = eig.apply(psi[k], tau);
        result.trajectories[k].times.push_back(ts);
        double p = 0.0;
        for (int i = 0; i < n; ++i) p += ryd_mask[i] * std::norm(at_sample(i));
        result.trajectories[k].rydberg_population.push_back(p);
        result.trajectories[k].states.push_back(std::move(at_sample));
      }
      ++next_sample;
    }
    for (int k = 0; k < 4; ++k) psi[k] = eig.apply(psi[k], iv.dt);
    result.u_full = (eig.propagator(iv.dt) * result.u_full).eval();
    t = t_end;
  }
  // Guard against the final sample being skipped by rounding.
  if (next_sample == sample_count - 1) record(total);
  return result;
}

double rydberg_time(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) throw std::invalid_argument("no trajectories");
  const Trajectory& first = trajectories.front();
  const std::size_t m = first.times.size();
  if (m < 2) throw std::invalid_argument("trajectories need at least two samples");
  for (const Trajectory& tr : trajectories) {
    if (tr.times.size() != m) throw std::invalid_argument("mismatched trajectory grids");
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(tr.times[i] - first.times[i]) > 1e-12)
        throw std::invalid_argument("mismatched trajectory grids");
  }
  double acc = 0.0;
  for (const Trajectory& tr : trajectories) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double dt = tr.times[i + 1] - tr.times[i];
      acc += 0.5 * dt * (tr.rydberg_population[i] + tr.rydberg_population[i + 1]);
    }
  }
  return acc / static_cast<double>(trajectories.size());
}

}  // namespace czpulse
