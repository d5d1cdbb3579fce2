// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"

namespace atomq {

/// Angle of a gate as scale * theta[param]; param < 0 means a fixed gate.
struct ParamBinding {
  int param = -1;
  double scale = 0.0;

  bool operator==(const ParamBinding&) const = default;
};

/// Circuit whose rotation angles are linear in a parameter vector.
struct ParametricCircuit {
  Circuit base;  // fixed gates carry their angle; bound gates are overwritten
  std::vector<ParamBinding> bindings;  // one per gate
  std::size_t n_params = 0;

  ParametricCircuit() = default;
  ParametricCircuit(std::size_t n_qubits, std::size_t params) : base(n_qubits), n_params(params) {}

  std::size_t n_qubits() const noexcept { return base.n_qubits; }

  void add_fixed(const Gate& g) {
    base.add(g);
    bindings.push_back({});
  }

  void add_bound(Gate g, int param, double scale) {
    if (!g.is_parametric() || g.is_controlled())
      throw ValidationError("only uncontrolled rotation or phase gates can carry a parameter");
    if (param < 0 || static_cast<std::size_t>(param) >= n_params) throw ValidationError("parameter index out of range");
    g.angle = 0.0;
    base.add(g);
    bindings.push_back({param, scale});
  }

  /// Appends a concrete circuit compiled at theta[param] = 1: its rotation
  /// angles become the scales of `param`. Phase gates stay fixed.
  void append_scaled(const Circuit& unit, int param) {
    if (unit.n_qubits != n_qubits()) throw ValidationError("qubit-count mismatch");
    for (const auto& g : unit.gates) {
      const bool rot = g.kind == GateKind::Rx || g.kind == GateKind::Ry || g.kind == GateKind::Rz;
      if (rot && !g.is_controlled()) add_bound(g, param, g.angle);
      else add_fixed(g);
    }
  }

  Circuit bind(std::span<const double> theta) const {
    if (theta.size() != n_params)
      throw ValidationError("expected " + std::to_string(n_params) + " parameters, got " + std::to_string(theta.size()));
    Circuit c = base;
    for (std::size_t i = 0; i < c.gates.size(); ++i)
      if (bindings[i].param >= 0) c.gates[i].angle = bindings[i].scale * theta[static_cast<std::size_t>(bindings[i].param)];
    return c;
  }
};

}  // namespace atomq
