// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Exact energy derivatives of a parametric circuit acting on |0...0>.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "atomq/ansatz/parametric.hpp"
#include "atomq/error.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/simulator.hpp"
#include "atomq/state_vector.hpp"

namespace atomq {

struct GradientReport {
  double energy = 0.0;
  std::vector<double> gradient;
  Eigen::MatrixXd metric;  // empty unless requested

  double gradient_norm() const {
    double s = 0.0;
    for (double g : gradient) s += g * g;
    return std::sqrt(s);
  }
};

namespace detail {

/// s <- dU/d(angle) s for a rotation or phase gate U.
inline void apply_gate_derivative(StateVector& s, const Gate& g) {
  apply_gate(s, g);
  const Mask tb = Mask{1} << g.target;
  auto a = s.amplitudes();
  const Complex mi_half{0.0, -0.5};
  switch (g.kind) {
    case GateKind::Rx:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(i & tb)) {
          const Complex x0 = a[i], x1 = a[i | tb];
          a[i] = mi_half * x1;
          a[i | tb] = mi_half * x0;
        }
      return;
    case GateKind::Ry:
      // -i/2 Y = 1/2 [[0, -1], [1, 0]]
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(i & tb)) {
          const Complex x0 = a[i], x1 = a[i | tb];
          a[i] = -0.5 * x1;
          a[i | tb] = 0.5 * x0;
        }
      return;
    case GateKind::Rz:
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & tb) ? -mi_half : mi_half;
      return;
    case GateKind::Phase:
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = (i & tb) ? Complex{0.0, 1.0} * a[i] : Complex{};
      return;
    default: throw ValidationError("gate has no parameter derivative");
  }
}

}  // namespace detail

inline StateVector prepare_state(const ParametricCircuit& pc, std::span<const double> theta) {
  return apply_circuit(StateVector(pc.n_qubits()), pc.bind(theta));
}

inline double energy(const ParametricCircuit& pc, std::span<const double> theta, const QubitHamiltonian& h) {
  return expectation(prepare_state(pc, theta), h);
}

/// Adjoint (reverse-mode) gradient: one forward pass, then H|psi> and |psi>
/// are walked back through the circuit together.
inline GradientReport energy_gradient(const ParametricCircuit& pc, std::span<const double> theta,
                                      const QubitHamiltonian& h) {
  if (h.n_qubits() != pc.n_qubits()) throw ValidationError("Hamiltonian and ansatz qubit counts differ");
  for (double t : theta)
    if (!std::isfinite(t)) throw ValidationError("non-finite parameter");
  const Circuit c = pc.bind(theta);
  GradientReport out;
  out.gradient.assign(pc.n_params, 0.0);
  StateVector phi = apply_circuit(StateVector(pc.n_qubits()), c);
  out.energy = expectation(phi, h);
  StateVector lambda = apply_hamiltonian(h, phi);
  for (std::size_t k = c.gates.size(); k-- > 0;) {
    const Gate& g = c.gates[k];
    const Gate inv = g.inverse();
    apply_gate(phi, inv);
    if (pc.bindings[k].param >= 0) {
      StateVector mu = phi;
      detail::apply_gate_derivative(mu, g);
      out.gradient[static_cast<std::size_t>(pc.bindings[k].param)] += 2.0 * pc.bindings[k].scale * lambda.inner(mu).real();
    }
    apply_gate(lambda, inv);
  }
  return out;
}

/// (E(theta + s) - E(theta - s)) / 2 per parameter; every parameter must drive
/// exactly one Pauli rotation, whose shift is pi / (2 scale).
inline std::vector<double> parameter_shift_gradient(const ParametricCircuit& pc, std::span<const double> theta,
                                                    const QubitHamiltonian& h) {
  std::vector<int> uses(pc.n_params, 0);
  std::vector<double> scale(pc.n_params, 0.0);
  for (std::size_t k = 0; k < pc.bindings.size(); ++k) {
    const auto& b = pc.bindings[k];
    if (b.param < 0) continue;
    if (pc.base.gates[k].kind == GateKind::Phase) throw ValidationError("parameter shift needs Pauli rotations");
    ++uses[static_cast<std::size_t>(b.param)];
    scale[static_cast<std::size_t>(b.param)] = b.scale;
  }
  std::vector<double> t(theta.begin(), theta.end()), grad(pc.n_params, 0.0);
  for (std::size_t i = 0; i < pc.n_params; ++i) {
    if (uses[i] == 0) continue;
    if (uses[i] > 1 || scale[i] == 0.0) throw ValidationError("parameter shift needs one gate per parameter");
    const double shift = std::numbers::pi / (2.0 * scale[i]);
    t[i] = theta[i] + shift;
    const double ep = energy(pc, t, h);
    t[i] = theta[i] - shift;
    const double em = energy(pc, t, h);
    t[i] = theta[i];
    grad[i] = scale[i] * (ep - em) / 2.0;
  }
  return grad;
}

/// |d psi / d theta_i> for every parameter, propagated forward alongside |psi>.
inline std::vector<StateVector> derivative_states(const ParametricCircuit& pc, std::span<const double> theta,
                                                  StateVector* psi_out = nullptr) {
  const Circuit c = pc.bind(theta);
  const std::size_t n = pc.n_qubits();
  StateVector psi(n);
  std::vector<StateVector> d(pc.n_params, StateVector(n, std::vector<Complex>(std::size_t{1} << n)));
  std::vector<bool> live(pc.n_params, false);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const Gate& g = c.gates[k];
    for (std::size_t i = 0; i < d.size(); ++i)
      if (live[i]) apply_gate(d[i], g);
    const int p = pc.bindings[k].param;
    if (p >= 0) {
      StateVector mu = psi;
      detail::apply_gate_derivative(mu, g);
      auto dst = d[static_cast<std::size_t>(p)].amplitudes();
      auto src = mu.amplitudes();
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += pc.bindings[k].scale * src[j];
      live[static_cast<std::size_t>(p)] = true;
    }
    apply_gate(psi, g);
  }
  if (c.global_phase != 0.0) {
    const Complex ph = std::polar(1.0, c.global_phase);
    for (auto& x : psi.amplitudes()) x *= ph;
    for (auto& s : d)
      for (auto& x : s.amplitudes()) x *= ph;
  }
  if (psi_out) *psi_out = psi;
  return d;
}

/// F_ij = Re <d_i psi | d_j psi> - <d_i psi | psi> <psi | d_j psi>, symmetrized.
inline Eigen::MatrixXd fubini_study_metric(const ParametricCircuit& pc, std::span<const double> theta) {
  StateVector psi;
  const auto d = derivative_states(pc, theta, &psi);
  const auto p = static_cast<Eigen::Index>(d.size());
  std::vector<Complex> ov(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) ov[i] = d[i].inner(psi);
  Eigen::MatrixXd f(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i; j < p; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const double v = (d[ui].inner(d[uj]) - ov[ui] * std::conj(ov[uj])).real();
      f(i, j) = v;
      f(j, i) = v;
    }
  return f;
}

}  // namespace atomq
