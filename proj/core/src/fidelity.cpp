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

#include "czpulse/fidelity.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "czpulse/units.hpp"

namespace czpulse {

using cd = std::complex<double>;
static constexpr cd kI(0.0, 1.0);

Eigen::Matrix4cd cz_target() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = -1.0;
  return u;
}

Eigen::Matrix4cd extract_gate_matrix(const Eigen::MatrixXcd& u_full, const BasisSet& basis) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      m(r, c) = u_full(basis.computational_indices[r], basis.computational_indices[c]);
  return m;
}

double pedersen_fidelity(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& u_target) {
  if ((u_target.adjoint() * u_target - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() >
      1e-10)
    throw std::invalid_argument("target gate must be unitary");
  const cd tr = (u_target.adjoint() * m).trace();
  const cd leak = (u_target.adjoint() * m * m.adjoint() * u_target).trace();
  if (std::abs(leak.imag()) > 1e-12)
    throw std::runtime_error("leakage trace has non-negligible imaginary part");
  return (std::norm(tr) + leak.real()) / 20.0;
}

namespace {

// |g(v)|^2 with g(v) = z1 e^{-iv} + z2 + z3 e^{iv} is the degree-2
// trigonometric polynomial s0 + 2 Re(c1 e^{-iv}) + 2 Re(c2 e^{-2iv}).
struct GaugeObjective {
  cd z1, z2, z3;
  double s0;
  cd c1, c2;

  explicit GaugeObjective(const Eigen::Matrix4cd& m) {
    z1 = m(0, 0);
    z2 = m(1, 1) + m(2, 2);
    z3 = -m(3, 3);
    s0 = std::norm(z1) + std::norm(z2) + std::norm(z3);
    c1 = z1 * std::conj(z2) + z2 * std::conj(z3);
    c2 = z1 * std::conj(z3);
  }

  double value(double v) const {
    const cd e1 = std::exp(-kI * v);
    return s0 + 2.0 * (c1 * e1).real() + 2.0 * (c2 * e1 * e1).real();
  }
  double deriv(double v) const {
    const cd r1 = c1 * std::exp(-kI * v);
    const cd r2 = c2 * std::exp(-2.0 * kI * v);
    return 2.0 * r1.imag() + 4.0 * r2.imag();
  }
  double deriv2(double v) const {
    const cd r1 = c1 * std::exp(-kI * v);
    const cd r2 = c2 * std::exp(-2.0 * kI * v);
    return -2.0 * r1.real() - 8.0 * r2.real();
  }
  cd g(double v) const {
    return z1 * std::exp(-kI * v) + z2 + z3 * std::exp(kI * v);
  }

  // Newton refinement toward a local maximum; falls back to the start point
  // if the iteration leaves its basin.
  double refine(double v0) const {
    double v = v0;
    for (int it = 0; it < 60; ++it) {
      const double d1 = deriv(v);
      const double d2 = deriv2(v);
      if (d2 >= -1e-300) break;  // not locally concave, keep best-so-far
      const double step = d1 / d2;
      v -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return value(v) >= value(v0) ? v : v0;
  }
};

double wrap_pi(double x) {
  x = std::remainder(x, kTwoPi);
  return x;
}

}  // namespace

GaugeDetail gauge_fidelity_detail(const Eigen::Matrix4cd& m) {
  const GaugeObjective obj(m);

  double best_v = 0.0;
  double best_h = obj.value(0.0);
  // Seed from the phases of the diagonal, exact for the ideal gate structure.
  if (std::abs(obj.z1) > 0.0 && std::abs(obj.z3) > 0.0) {
    const double seed = 0.5 * (std::arg(obj.z1) - std::arg(obj.z3));
    const double v = obj.refine(seed);
    if (obj.value(v) > best_h) {
      best_h = obj.value(v);
      best_v = v;
    }
  }
  // Dense-grid safeguard for degenerate diagonals; the objective has at most
  // two local maxima per period.
  constexpr int kGrid = 256;
  for (int i = 0; i < kGrid; ++i) {
    const double v = kTwoPi * i / kGrid;
    if (obj.value(v) > best_h) {
      best_h = obj.value(v);
      best_v = v;
    }
  }
  best_v = obj.refine(best_v);
  best_h = obj.value(best_v);

  GaugeDetail out;
  out.v_star = wrap_pi(best_v);
  out.g = obj.g(best_v);
  out.fidelity = (best_h + m.squaredNorm()) / 20.0;
  return out;
}

GateResult gauge_fix(const Eigen::Matrix4cd& m) {
  const GaugeDetail det = gauge_fidelity_detail(m);

  GateResult res;
  res.m_matrix = m;
  res.fidelity = det.fidelity;
  res.fidelity_vs_cz_raw = pedersen_fidelity(m, cz_target());

  // Split v = (alpha - beta)/2; the common phase u = (alpha + beta)/2 is
  // fixed by making the aligned trace real positive.
  const double u = std::arg(det.g);
  res.alpha = wrap_pi(u + det.v_star);
  res.beta = wrap_pi(u - det.v_star);
  res.epsilon = std::arg(-std::exp(-kI * res.beta) * m(3, 3));
  res.a = std::abs(m(0, 0));
  res.b = std::sqrt(std::abs(m(1, 1) * m(2, 2)));
  res.c = std::abs(m(3, 3));
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col)
      if (r != col) res.offdiag_max_abs = std::max(res.offdiag_max_abs, std::abs(m(r, col)));
  return res;
}

}  // namespace czpulse
