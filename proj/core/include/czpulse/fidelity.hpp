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

// Computational-basis gate matrix extraction, the single-qubit phase gauge
// freedom of the CZ-like gate, and the leakage-aware trace fidelity.

#pragma once

#include <Eigen/Dense>

#include "czpulse/atom.hpp"

namespace czpulse {

// diag(1, 1, 1, -1)
Eigen::Matrix4cd cz_target();

// Computational-basis block of a full-space evolution operator, in the
// canonical order uu, ud, du, dd.
Eigen::Matrix4cd extract_gate_matrix(const Eigen::MatrixXcd& u_full, const BasisSet& basis);

// Trace fidelity [|Tr(U^dag M)|^2 + Tr(U^dag M M^dag U)] / 20, valid for a
// non-unitary M arising from leakage. Throws if u_target is not unitary to
// 1e-10.
double pedersen_fidelity(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& u_target);

// Gate diagnostics after fixing the single-qubit phase gauge
// diag(e^{-i a}, e^{-i(a+b)/2}, e^{-i(a+b)/2}, e^{-i b}).
struct GateResult {
  Eigen::Matrix4cd m_matrix;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;    // residual phase of the dd element, arg(-e^{-i beta} m33)
  double a = 0.0;          // |m00|
  double b = 0.0;          // sqrt(|m11 m22|)
  double c = 0.0;          // |m33|
  double fidelity = 0.0;   // gauge-fixed Pedersen fidelity vs CZ
  double fidelity_vs_cz_raw = 0.0;  // without gauge fixing
  double offdiag_max_abs = 0.0;     // largest off-diagonal magnitude of m
};

// Maximizes pedersen_fidelity(D(alpha,beta) m, CZ) over the single-qubit
// phases. The leakage trace term is gauge invariant and |Tr| depends only on
// v = (alpha - beta)/2, so the search is one-dimensional: seeded from
// arg(m00), arg(-m33), refined by Newton iteration and safeguarded by a
// dense grid over [0, 2 pi).
GateResult gauge_fix(const Eigen::Matrix4cd& m);

// Gauge-fixed fidelity pieces needed by the optimizer's gradient: the
// maximizing v, the phase-aligned trace g = e^{-i v} m00 + m11 + m22
// - e^{i v} m33 and the fidelity (|g|^2 + ||m||_F^2) / 20.
struct GaugeDetail {
  double v_star;
  std::complex<double> g;
  double fidelity;
};
GaugeDetail gauge_fidelity_detail(const Eigen::Matrix4cd& m);

}  // namespace czpulse
