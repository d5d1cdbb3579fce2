// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"
#include "atomq/pauli.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/state_vector.hpp"

namespace atomq {

inline void apply_gate(StateVector& s, const Gate& g) {
  auto a = s.amplitudes();
  const Mask tb = Mask{1} << g.target;
  const Mask cb = g.control >= 0 ? Mask{1} << g.control : 0;
  const std::size_t dim = a.size();

  switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & tb) && (i & cb) == cb) std::swap(a[i], a[i | tb]);
      return;
    case GateKind::Rz:
    case GateKind::Phase: {
      const auto m = g.matrix();
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & tb) && (i & cb) == cb) {
          a[i] *= m[0][0];
          a[i | tb] *= m[1][1];
        }
      return;
    }
    default: {
      const auto m = g.matrix();
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & tb) && (i & cb) == cb) {
          const Complex x0 = a[i], x1 = a[i | tb];
          a[i] = m[0][0] * x0 + m[0][1] * x1;
          a[i | tb] = m[1][0] * x0 + m[1][1] * x1;
        }
    }
  }
}

/// Applies the gates in list order, then the circuit's global phase.
inline void apply_circuit_in_place(StateVector& s, const Circuit& c) {
  if (c.n_qubits != s.n_qubits()) throw ValidationError("circuit and state qubit counts differ");
  for (const auto& g : c.gates) apply_gate(s, g);
  if (c.global_phase != 0.0) {
    const Complex ph = std::polar(1.0, c.global_phase);
    for (auto& x : s.amplitudes()) x *= ph;
  }
}

inline StateVector apply_circuit(StateVector s, const Circuit& c) {
  apply_circuit_in_place(s, c);
  return s;
}

/// state <- exp(-i angle P / 2) state = (cos(angle/2) I - i sin(angle/2) P) state.
inline void apply_pauli_exponential_in_place(StateVector& s, const PauliString& p, double angle) {
  if (p.n_qubits() != s.n_qubits()) throw ValidationError("Pauli string and state qubit counts differ");
  auto a = s.amplitudes();
  const double c = std::cos(angle / 2), sn = std::sin(angle / 2);
  const Complex mis{0.0, -sn};
  const Mask x = p.x();
  if (x == 0) {
    for (std::size_t b = 0; b < a.size(); ++b) {
      const auto [ph, t] = p.apply_to_basis(b);
      a[b] *= c + mis * ph;
    }
    return;
  }
  const Mask hi = Mask{1} << (63 - std::countl_zero(x));
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (b & hi) continue;  // visit each pair (b, b ^ x) once
    const std::size_t b2 = b ^ x;
    const auto [ph1, t1] = p.apply_to_basis(b);   // P|b>  = ph1 |b2>
    const auto [ph2, t2] = p.apply_to_basis(b2);  // P|b2> = ph2 |b>
    const Complex v1 = a[b], v2 = a[b2];
    a[b] = c * v1 + mis * ph2 * v2;
    a[b2] = c * v2 + mis * ph1 * v1;
  }
}

inline StateVector apply_pauli_exponential(StateVector s, const PauliString& p, double angle) {
  apply_pauli_exponential_in_place(s, p, angle);
  return s;
}

/// out += coeff * P |in>.
inline void accumulate_pauli(std::span<Complex> out, std::span<const Complex> in, const PauliString& p, Complex coeff) {
  for (std::size_t b = 0; b < in.size(); ++b) {
    const auto [ph, t] = p.apply_to_basis(b);
    out[t] += coeff * ph * in[b];
  }
}

/// H|psi>, unnormalized.
inline StateVector apply_hamiltonian(const QubitHamiltonian& h, const StateVector& s) {
  if (h.n_qubits() != s.n_qubits()) throw ValidationError("Hamiltonian and state qubit counts differ");
  StateVector out(s.n_qubits(), std::vector<Complex>(s.dim()));
  for (const auto& t : h) accumulate_pauli(out.amplitudes(), s.amplitudes(), t.string, t.coeff);
  return out;
}

/// <psi|P|psi>.
inline Complex pauli_expectation(const StateVector& s, const PauliString& p) {
  auto a = s.amplitudes();
  Complex acc{};
  for (std::size_t b = 0; b < a.size(); ++b) {
    const auto [ph, t] = p.apply_to_basis(b);
    acc += std::conj(a[t]) * ph * a[b];
  }
  return acc;
}

/// <psi|H|psi> / <psi|psi> for a Hermitian H.
inline double expectation(const StateVector& s, const QubitHamiltonian& h) {
  if (h.n_qubits() != s.n_qubits()) throw ValidationError("Hamiltonian and state qubit counts differ");
  h.require_hermitian();
  Complex acc{};
  for (const auto& t : h) acc += t.coeff * pauli_expectation(s, t.string);
  const double nrm = s.norm_squared();
  if (nrm == 0.0) throw NumericalError("expectation value of a zero state");
  const double scale = std::max(1.0, h.one_norm());
  if (std::abs(acc.imag()) > 1e-10 * scale * nrm)
    throw NumericalError("expectation value has a non-negligible imaginary part");
  return acc.real() / nrm;
}

}  // namespace atomq
