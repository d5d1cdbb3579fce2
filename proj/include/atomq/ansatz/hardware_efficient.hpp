// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "atomq/ansatz/parametric.hpp"
#include "atomq/circuit.hpp"
#include "atomq/error.hpp"

namespace atomq {

enum class HeLayout { merged, splitted };
enum class HeRotation { zx, zyz };

inline std::string to_string(HeLayout l) { return l == HeLayout::merged ? "merged" : "splitted"; }
inline std::string to_string(HeRotation r) { return r == HeRotation::zx ? "zx" : "zyz"; }

/// Layers of single-qubit rotations and fixed CNOT entanglers on |0...0>.
///   merged:   [rot, ent1, ent2] x L, rot
///   splitted: [rot, ent1, rot, ent2] x L, rot
/// ent1 couples (0,1), (2,3), ...; ent2 couples (1,2), (3,4), ...
struct HeAnsatz {
  std::size_t n_qubits = 1;
  std::size_t layers = 1;
  HeLayout layout = HeLayout::splitted;
  HeRotation rotation = HeRotation::zyz;

  std::size_t params_per_qubit() const noexcept { return rotation == HeRotation::zx ? 2 : 3; }
  std::size_t n_rotation_layers() const noexcept { return layout == HeLayout::merged ? layers + 1 : 2 * layers + 1; }
  std::size_t n_params() const noexcept { return params_per_qubit() * n_qubits * n_rotation_layers(); }

  ParametricCircuit program() const {
    if (n_qubits == 0) throw ValidationError("hardware-efficient ansatz needs at least one qubit");
    ParametricCircuit pc(n_qubits, n_params());
    int next = 0;
    auto rotations = [&] {
      for (std::size_t q = 0; q < n_qubits; ++q) {
        const int t = static_cast<int>(q);
        if (rotation == HeRotation::zx) {
          // Rz(theta_2) Rx(theta_1)
          pc.add_bound(Gate::rx(t, 0.0), next++, 1.0);
          pc.add_bound(Gate::rz(t, 0.0), next++, 1.0);
        } else {
          // Rz(theta_3) Ry(theta_2) Rz(theta_1)
          pc.add_bound(Gate::rz(t, 0.0), next++, 1.0);
          pc.add_bound(Gate::ry(t, 0.0), next++, 1.0);
          pc.add_bound(Gate::rz(t, 0.0), next++, 1.0);
        }
      }
    };
    auto entangler = [&](std::size_t first) {
      for (std::size_t q = first; q + 1 < n_qubits; q += 2)
        pc.add_fixed(Gate::cnot(static_cast<int>(q), static_cast<int>(q + 1)));
    };
    for (std::size_t l = 0; l < layers; ++l) {
      rotations();
      entangler(0);
      if (layout == HeLayout::splitted) rotations();
      entangler(1);
    }
    rotations();
    return pc;
  }
};

inline Circuit build_he_circuit(const HeAnsatz& ansatz, std::span<const double> theta) {
  if (theta.size() != ansatz.n_params())
    throw ValidationError("expected " + std::to_string(ansatz.n_params()) + " parameters, got " +
                          std::to_string(theta.size()));
  return ansatz.program().bind(theta);
}

}  // namespace atomq
