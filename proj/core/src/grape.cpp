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

#include "czpulse/grape.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "czpulse/dynamics.hpp"
#include "czpulse/parallel.hpp"
#include "czpulse/units.hpp"

namespace czpulse {

using cd = std::complex<double>;
static constexpr cd kI(0.0, 1.0);

// Restarts run in fixed-size waves with an early-stop check between waves,
// so the set of restarts executed is independent of the worker count.
static constexpr int kWaveSize = 4;

void OptimizationSpec::validate() const {
  if (!(ratio >= 0.0) || !std::isfinite(ratio))
    throw std::invalid_argument("ratio must be finite and >= 0");
  if (!(n_periods > 0.0) || !std::isfinite(n_periods))
    throw std::invalid_argument("n_periods must be positive");
  if (segment_count < 2) throw std::invalid_argument("segment_count must be >= 2");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(infidelity_target > 0.0 && infidelity_target < 1.0))
    throw std::invalid_argument("infidelity_target must lie in (0, 1)");
  if (!(stop_infidelity >= 0.0)) throw std::invalid_argument("stop_infidelity must be >= 0");
  if (!std::isfinite(delta_split)) throw std::invalid_argument("delta_split must be finite");
}

LaserConfig make_laser(double ratio, double delta_split) {
  return LaserConfig::with_split(1.0, ratio, delta_split);
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); identical across platforms for a given engine
// state (mt19937_64 output is standard-specified).
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
}

Eigen::VectorXd random_phases(uint64_t seed, int restart, int n) {
  std::mt19937_64 eng(splitmix64(seed + static_cast<uint64_t>(restart)));
  Eigen::VectorXd phases(n);
  for (int i = 0; i < n; ++i) phases[i] = kTwoPi * uniform01(eng);
  return phases;
}

struct EigH {
  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;

  Eigen::MatrixXcd propagator(double dt) const {
    const Eigen::VectorXcd ph = ((-kI * dt) * evals.cast<cd>().array()).exp().matrix();
    return evecs * ph.asDiagonal() * evecs.adjoint();
  }
};

EigH decompose(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Fixed-duration propagation engine over the segment phases.
//
// Every coupling carries the same laser phase, so H(phi) = G H(0) G* with
// G = exp(i phi N) and N the Rydberg-count diagonal. A segment (or a whole
// constant-phase amplitude ramp) therefore has propagator
//   U_k = G(phi_k) B_k G(phi_k)*,
// where the base B_k is computed once per geometry at phi = 0: elementwise,
// U_k(p,q) = B_k(p,q) e^{i phi_k (N_p - N_q)}. The phase derivative is
// dU_k/dphi_k = i[N, U_k], also elementwise. One Hermitian eigendecomposition
// per distinct amplitude replaces one per segment per evaluation.
class FastEngine {
 public:
  FastEngine(const PhaseProfile& profile, const BasisSet& basis,
             const std::vector<Coupling>& couplings)
      : dim_(basis.size()), nseg_(static_cast<int>(profile.segments.size())) {
    profile.validate();
    if (nseg_ < 1) throw std::invalid_argument("profile needs at least one segment");

    nr_.resize(dim_);
    for (int i = 0; i < dim_; ++i) nr_[i] = static_cast<double>(basis.states[i].rydberg_count());
    for (int j = 0; j < 4; ++j) comp_[j] = basis.computational_indices[j];

    const double amp = profile.omega_max;
    const EigH flat = decompose(assemble_hamiltonian(basis, couplings, 0.0, amp));
    base_.resize(nseg_);
    for (int k = 0; k < nseg_; ++k) base_[k] = flat.propagator(profile.segments[k].duration);

    // Amplitude ramps are glued to the adjacent flat segment; the sub-step
    // grid matches build_intervals so both propagation routes agree.
    if (profile.edge && profile.edge->rise_duration > 0.0) {
      Eigen::MatrixXcd rise = Eigen::MatrixXcd::Identity(dim_, dim_);
      const double dt = profile.edge->rise_duration / kEdgeSubsteps;
      for (int j = 0; j < kEdgeSubsteps; ++j) {
        const double a = amp * profile.envelope((j + 0.5) * dt);
        rise = (decompose(assemble_hamiltonian(basis, couplings, 0.0, a)).propagator(dt) * rise)
                   .eval();
      }
      base_.front() = (base_.front() * rise).eval();
    }
    if (profile.edge && profile.edge->fall_duration > 0.0) {
      Eigen::MatrixXcd fall = Eigen::MatrixXcd::Identity(dim_, dim_);
      const double dt = profile.edge->fall_duration / kEdgeSubsteps;
      const double t0 = profile.total_duration - profile.edge->fall_duration;
      for (int j = 0; j < kEdgeSubsteps; ++j) {
        const double a = amp * profile.envelope(t0 + (j + 0.5) * dt);
        fall = (decompose(assemble_hamiltonian(basis, couplings, 0.0, a)).propagator(dt) * fall)
                   .eval();
      }
      base_.back() = (fall * base_.back()).eval();
    }
  }

  int segment_count() const { return nseg_; }

  // Gate block of the full propagator for the given phases.
  Eigen::Matrix4cd gate_block(const Eigen::VectorXd& phi) const {
    Eigen::MatrixXcd p = comp_columns();
    Eigen::MatrixXcd u(dim_, dim_);
    for (int k = 0; k < nseg_; ++k) {
      mask(base_[k], phi[k], u);
      p = (u * p).eval();
    }
    return comp_rows(p);
  }

  double infidelity(const Eigen::VectorXd& phi) const {
    return 1.0 - gauge_fidelity_detail(gate_block(phi)).fidelity;
  }

  // Infidelity and its analytic gradient over the segment phases.
  double infidelity_gradient(const Eigen::VectorXd& phi, Eigen::VectorXd& grad) const {
    std::vector<Eigen::MatrixXcd> u(nseg_);
    std::vector<Eigen::MatrixXcd> prefix(nseg_ + 1);  // dim x 4, columns = inputs
    prefix[0] = comp_columns();
    for (int k = 0; k < nseg_; ++k) {
      u[k].resize(dim_, dim_);
      mask(base_[k], phi[k], u[k]);
      prefix[k + 1] = (u[k] * prefix[k]).eval();
    }
    const Eigen::Matrix4cd m = comp_rows(prefix[nseg_]);
    const GaugeDetail det = gauge_fidelity_detail(m);

    // d(fidelity)/dphi_k = Re tr(Y dM/dphi_k) / 10 with Y picking up both the
    // aligned-trace term (at the fixed optimal gauge, envelope theorem) and
    // the norm term.
    Eigen::Matrix4cd y = m.adjoint();
    const cd gbar = std::conj(det.g);
    const cd ev = std::exp(-kI * det.v_star);
    y(0, 0) += gbar * ev;
    y(1, 1) += gbar;
    y(2, 2) += gbar;
    y(3, 3) -= gbar * std::conj(ev);

    grad.resize(nseg_);
    Eigen::MatrixXcd suffix = comp_rows_matrix();  // 4 x dim, rows of the suffix product
    for (int k = nseg_ - 1; k >= 0; --k) {
      // suffix * i[N, U_k] = i((suffix N) U_k - (suffix U_k) N)
      const Eigen::MatrixXcd su = (suffix * u[k]).eval();
      Eigen::MatrixXcd a = (suffix * nr_.asDiagonal()) * u[k] - su * nr_.asDiagonal();
      const Eigen::Matrix4cd z = (kI * a) * prefix[k];
      grad[k] = -0.1 * (y * z).trace().real();
      suffix = su;
    }
    return 1.0 - det.fidelity;
  }

 private:
  // Columns of the identity at the computational indices (dim x 4).
  Eigen::MatrixXcd comp_columns() const {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim_, 4);
    for (int j = 0; j < 4; ++j) p(comp_[j], j) = 1.0;
    return p;
  }
  Eigen::MatrixXcd comp_rows_matrix() const {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(4, dim_);
    for (int j = 0; j < 4; ++j) r(j, comp_[j]) = 1.0;
    return r;
  }
  Eigen::Matrix4cd comp_rows(const Eigen::MatrixXcd& p) const {
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = p(comp_[r], c);
    return m;
  }

  void mask(const Eigen::MatrixXcd& b, double phi, Eigen::MatrixXcd& out) const {
    const cd z = std::exp(kI * phi);
    const cd zc = std::conj(z);
    for (int q = 0; q < dim_; ++q) {
      for (int p = 0; p < dim_; ++p) {
        const double d = nr_[p] - nr_[q];
        out(p, q) = d == 0.0 ? b(p, q) : (d > 0.0 ? b(p, q) * z : b(p, q) * zc);
      }
    }
  }

  int dim_;
  int nseg_;
  Eigen::VectorXd nr_;
  std::array<int, 4> comp_{};
  std::vector<Eigen::MatrixXcd> base_;
};

struct RestartResult {
  Eigen::VectorXd phases;
  double infidelity = 1.0;
  int iterations = 0;
  std::vector<double> trace;
};

Eigen::VectorXd lbfgs_direction(const Eigen::VectorXd& g, const std::deque<Eigen::VectorXd>& s,
                                const std::deque<Eigen::VectorXd>& y) {
  if (s.empty()) return -g;
  const int m = static_cast<int>(s.size());
  Eigen::VectorXd q = g;
  std::vector<double> alpha(m), rho(m);
  for (int i = m - 1; i >= 0; --i) {
    rho[i] = 1.0 / y[i].dot(s[i]);
    alpha[i] = rho[i] * s[i].dot(q);
    q -= alpha[i] * y[i];
  }
  q *= s.back().dot(y.back()) / y.back().squaredNorm();
  for (int i = 0; i < m; ++i) {
    const double beta = rho[i] * y[i].dot(q);
    q += (alpha[i] - beta) * s[i];
  }
  return -q;
}

// L-BFGS descent on the infidelity with Armijo backtracking and a
// steepest-descent fallback. The recorded trace is non-increasing.
RestartResult run_restart(const FastEngine& eng, Eigen::VectorXd phi,
                          const OptimizationSpec& spec) {
  constexpr int kMemory = 10;
  constexpr double kArmijo = 1e-4;
  const double stop = spec.stop_threshold();

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  Eigen::VectorXd grad(phi.size()), grad_new(phi.size());
  double f = eng.infidelity_gradient(phi, grad);

  RestartResult res;
  res.trace.push_back(f);

  Eigen::VectorXd phi_new(phi.size());
  double f_new = f;
  auto backtrack = [&](const Eigen::VectorXd& d, double gd) {
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      phi_new = phi + t * d;
      f_new = eng.infidelity(phi_new);
      if (f_new <= f + kArmijo * t * gd) return true;
      t *= 0.5;
    }
    return false;
  };

  int it = 0;
  int stall = 0;
  for (; it < spec.max_iterations; ++it) {
    if (f <= stop) break;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-14) break;

    Eigen::VectorXd d = lbfgs_direction(grad, s_hist, y_hist);
    double gd = grad.dot(d);
    bool accepted = gd < 0.0 && backtrack(d, gd);
    if (!accepted && !s_hist.empty()) {
      s_hist.clear();
      y_hist.clear();
      d = -grad;
      gd = -grad.squaredNorm();
      accepted = backtrack(d, gd);
    }
    if (!accepted) break;  // stationary to line-search precision

    const double check = eng.infidelity_gradient(phi_new, grad_new);
    (void)check;  // same arithmetic as infidelity(); value equals f_new
    const Eigen::VectorXd s = phi_new - phi;
    const Eigen::VectorXd yv = grad_new - grad;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(yv);
      if (static_cast<int>(s_hist.size()) > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    const double decrease = f - f_new;
    phi.swap(phi_new);
    grad.swap(grad_new);
    f = f_new;
    res.trace.push_back(f);
    if (decrease < 1e-16 * std::max(1.0, std::abs(f))) {
      if (++stall >= 5) {
        ++it;
        break;
      }
    } else {
      stall = 0;
    }
  }

  res.phases = std::move(phi);
  res.infidelity = f;
  res.iterations = it;
  return res;
}

PhaseProfile with_phases(PhaseProfile profile, const Eigen::VectorXd& phases) {
  for (std::size_t k = 0; k < profile.segments.size(); ++k)
    profile.segments[k].phase = phases[static_cast<int>(k)];
  if (profile.edge) {
    profile.edge->phase_start = profile.segments.front().phase;
    profile.edge->phase_end = profile.segments.back().phase;
  }
  return profile;
}

}  // namespace

OptimizationReport optimize_profile(const PhaseProfile& initial, const OptimizationSpec& spec,
                                    const LaserConfig& laser) {
  spec.validate();
  laser.validate();
  initial.validate();
  const int nseg = static_cast<int>(initial.segments.size());
  if (nseg < 2) throw std::invalid_argument("profile needs at least two segments");

  const BasisSet basis = enumerate_basis(false);
  const std::vector<Coupling> couplings = coupling_table(laser);
  const FastEngine eng(initial, basis, couplings);

  Eigen::VectorXd phi0(nseg);
  for (int k = 0; k < nseg; ++k) phi0[k] = initial.segments[k].phase;

  std::vector<RestartResult> results(spec.restarts);
  int completed = 0;
  for (int w0 = 0; w0 < spec.restarts; w0 += kWaveSize) {
    const int w1 = std::min(spec.restarts, w0 + kWaveSize);
    parallel_for(static_cast<std::size_t>(w1 - w0), spec.workers, [&](std::size_t j) {
      const int r = w0 + static_cast<int>(j);
      Eigen::VectorXd start = r == 0 ? phi0 : random_phases(spec.seed, r, nseg);
      results[r] = run_restart(eng, std::move(start), spec);
    });
    completed = w1;
    double best = 1.0;
    for (int r = 0; r < completed; ++r) best = std::min(best, results[r].infidelity);
    if (best <= spec.stop_threshold()) break;
  }

  OptimizationReport report;
  report.per_restart_infidelities.reserve(completed);
  report.iterations_used.reserve(completed);
  report.traces.reserve(completed);
  for (int r = 0; r < completed; ++r) {
    report.per_restart_infidelities.push_back(results[r].infidelity);
    report.iterations_used.push_back(results[r].iterations);
    report.traces.push_back(std::move(results[r].trace));
    if (report.best_restart < 0 || results[r].infidelity < report.best_infidelity) {
      report.best_restart = r;
      report.best_infidelity = results[r].infidelity;
    }
  }
  report.best_profile = with_phases(initial, results[report.best_restart].phases);
  report.converged = report.best_infidelity < spec.infidelity_target;
  report.best_gate =
      gauge_fix(extract_gate_matrix(evolution_operator(report.best_profile, basis, couplings), basis));
  return report;
}

OptimizationReport grape_optimize(const OptimizationSpec& spec, const LaserConfig& laser) {
  spec.validate();
  laser.validate();
  if (std::abs(laser.delta_z - spec.ratio * laser.omega_max) >
      1e-9 * std::max(1.0, laser.delta_z))
    throw std::invalid_argument("laser delta_z inconsistent with spec.ratio");
  const double total = kTwoPi * spec.n_periods / laser.omega_max;
  const PhaseProfile start =
      uniform_profile(total, std::vector<double>(static_cast<std::size_t>(spec.segment_count)));
  return optimize_profile(start, spec, laser);
}

double pulse_infidelity(const PhaseProfile& profile, const LaserConfig& laser) {
  const BasisSet basis = enumerate_basis(false);
  const FastEngine eng(profile, basis, coupling_table(laser));
  Eigen::VectorXd phi(profile.segments.size());
  for (std::size_t k = 0; k < profile.segments.size(); ++k)
    phi[static_cast<int>(k)] = profile.segments[k].phase;
  return eng.infidelity(phi);
}

double pulse_infidelity_gradient(const PhaseProfile& profile, const LaserConfig& laser,
                                 std::vector<double>& grad) {
  const BasisSet basis = enumerate_basis(false);
  const FastEngine eng(profile, basis, coupling_table(laser));
  Eigen::VectorXd phi(profile.segments.size());
  for (std::size_t k = 0; k < profile.segments.size(); ++k)
    phi[static_cast<int>(k)] = profile.segments[k].phase;
  Eigen::VectorXd g;
  const double f = eng.infidelity_gradient(phi, g);
  grad.assign(g.data(), g.data() + g.size());
  return f;
}

PhaseProfile add_edges(const PhaseProfile& profile, double rise_duration, double fall_duration,
                       EdgeShape shape) {
  profile.validate();
  if (profile.edge) throw std::invalid_argument("profile already has edges");
  if (rise_duration < 0.0 || fall_duration < 0.0)
    throw std::invalid_argument("edge durations must be >= 0");
  if (rise_duration == 0.0 && fall_duration == 0.0) return profile;

  PhaseProfile out = profile;
  out.edge = PulseEdge{rise_duration, fall_duration, shape, profile.segments.front().phase,
                       profile.segments.back().phase};
  out.total_duration += rise_duration + fall_duration;
  out.validate();
  return out;
}

PhaseProfile add_standard_edges(const PhaseProfile& profile, double n_periods, EdgeShape shape) {
  const double flat = kTwoPi * n_periods;
  if (std::abs(profile.total_duration - flat) > 1e-9 * std::max(1.0, flat))
    throw std::invalid_argument("profile duration does not equal 2*pi*N");
  const double edge = kPi * n_periods / 10.0;
  return add_edges(profile, edge, edge, shape);
}

MinDurationResult min_duration(double n_low, double n_high, double resolution,
                               const OptimizationSpec& spec, const LaserConfig& laser) {
  if (!(n_low > 0.0) || !(n_high > n_low)) throw std::invalid_argument("bad search window");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

  MinDurationResult res;
  auto probe = [&](double n, int restart_scale) {
    OptimizationSpec s = spec;
    s.n_periods = n;
    s.restarts = spec.restarts * restart_scale;
    OptimizationReport rep = grape_optimize(s, laser);
    res.probes.push_back({n, rep.best_infidelity, rep.converged});
    return rep;
  };

  OptimizationReport at_min = probe(n_high, 1);
  if (!at_min.converged) return res;  // no gate anywhere in the window
  double hi = n_high;

  const OptimizationReport low_rep = probe(n_low, 1);
  if (low_rep.converged) {
    res.found = true;
    res.lower_edge_feasible = true;
    res.n_min = n_low;
    res.best_infidelity = low_rep.best_infidelity;
    res.best_profile = low_rep.best_profile;
    return res;
  }
  double lo = n_low;

  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    OptimizationReport rep = probe(mid, 1);
    if (rep.converged) {
      hi = mid;
      at_min = std::move(rep);
    } else {
      lo = mid;
    }
  }
  // One extra probe below the bracket top with doubled restarts: the
  // feasibility boundary is restart-sensitive at the last digit.
  const double mid = 0.5 * (lo + hi);
  if (mid > lo && mid < hi) {
    OptimizationReport rep = probe(mid, 2);
    if (rep.converged) {
      hi = mid;
      at_min = std::move(rep);
    }
  }

  res.found = true;
  res.n_min = hi;
  res.best_infidelity = at_min.best_infidelity;
  res.best_profile = at_min.best_profile;
  return res;
}

std::vector<RatioScanPoint> fixed_duration_scan(double duration, const std::vector<double>& ratios,
                                                const OptimizationSpec& spec) {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  std::vector<RatioScanPoint> out;
  out.reserve(ratios.size());
  for (const double ratio : ratios) {
    OptimizationSpec s = spec;
    s.ratio = ratio;
    s.n_periods = duration / kTwoPi;
    const OptimizationReport rep = grape_optimize(s, make_laser(ratio, spec.delta_split));
    int converged = 0;
    for (const double inf : rep.per_restart_infidelities)
      if (inf < s.infidelity_target) ++converged;
    out.push_back({ratio, s.n_periods, 1.0 - rep.best_infidelity, rep.best_infidelity, converged});
  }
  return out;
}

}  // namespace czpulse
