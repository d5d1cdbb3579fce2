// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Singly-controlled circuits from elementary gates (Barenco et al. constructions).

#pragma once

#include <numbers>

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"

namespace atomq {

namespace detail {

inline void controlled_rz(Circuit& out, int c, int t, double theta) {
  out.add(Gate::rz(t, theta / 2)).add(Gate::cnot(c, t)).add(Gate::rz(t, -theta / 2)).add(Gate::cnot(c, t));
}

inline void controlled_ry(Circuit& out, int c, int t, double theta) {
  out.add(Gate::ry(t, theta / 2)).add(Gate::cnot(c, t)).add(Gate::ry(t, -theta / 2)).add(Gate::cnot(c, t));
}

inline void controlled_rx(Circuit& out, int c, int t, double theta) {
  out.add(Gate::h(t));
  controlled_rz(out, c, t, theta);
  out.add(Gate::h(t));
}

/// Six-CNOT Toffoli with T = P(pi/4).
inline void toffoli(Circuit& out, int c1, int c2, int t) {
  constexpr double q = std::numbers::pi / 4;
  out.add(Gate::h(t));
  out.add(Gate::cnot(c2, t)).add(Gate::phase(t, -q));
  out.add(Gate::cnot(c1, t)).add(Gate::phase(t, q));
  out.add(Gate::cnot(c2, t)).add(Gate::phase(t, -q));
  out.add(Gate::cnot(c1, t)).add(Gate::phase(c2, q)).add(Gate::phase(t, q));
  out.add(Gate::h(t));
  out.add(Gate::cnot(c1, c2)).add(Gate::phase(c1, q)).add(Gate::phase(c2, -q));
  out.add(Gate::cnot(c1, c2));
}

}  // namespace detail

/// Adds one control qubit (index n_qubits) to a circuit: the result acts as
/// the identity when the control is |0> and as the original unitary, global
/// phase included, when it is |1>.
inline Circuit make_controlled(const Circuit& in) {
  in.validate();
  const int c = static_cast<int>(in.n_qubits);
  Circuit out(in.n_qubits + 1);
  for (const auto& g : in.gates) {
    if (g.is_controlled() && g.kind != GateKind::CNOT) throw ValidationError("gate is already controlled");
    const int t = g.target;
    switch (g.kind) {
      case GateKind::Rz: detail::controlled_rz(out, c, t, g.angle); break;
      case GateKind::Ry: detail::controlled_ry(out, c, t, g.angle); break;
      case GateKind::Rx: detail::controlled_rx(out, c, t, g.angle); break;
      case GateKind::V: detail::controlled_rx(out, c, t, std::numbers::pi / 2); break;
      case GateKind::Vdg: detail::controlled_rx(out, c, t, -std::numbers::pi / 2); break;
      case GateKind::X: out.add(Gate::cnot(c, t)); break;
      case GateKind::CNOT: detail::toffoli(out, c, g.control, t); break;
      case GateKind::H:
        // H = Ry(pi/4) Z Ry(-pi/4) and Z = H X H
        out.add(Gate::ry(t, -std::numbers::pi / 4)).add(Gate::h(t)).add(Gate::cnot(c, t));
        out.add(Gate::h(t)).add(Gate::ry(t, std::numbers::pi / 4));
        break;
      case GateKind::Phase: {
        const double d = g.angle / 2;
        out.add(Gate::phase(c, d)).add(Gate::phase(t, d));
        out.add(Gate::cnot(c, t)).add(Gate::phase(t, -d)).add(Gate::cnot(c, t));
        break;
      }
    }
  }
  if (in.global_phase != 0.0) out.add(Gate::phase(c, in.global_phase));
  return out;
}

}  // namespace atomq
