// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Pauli operators tracked through Clifford conjugation.

#pragma once

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"
#include "atomq/pauli.hpp"

namespace atomq {

/// The operator i^k X^x Z^z, with all X factors written before all Z factors.
struct SignedPauli {
  std::size_t n_qubits = 0;
  Mask x = 0;
  Mask z = 0;
  int k = 0;

  static SignedPauli from(const PauliString& p) {
    // a Hermitian string carries one factor of i per Y (Y = i X Z)
    return {p.n_qubits(), p.x(), p.z(), popcount(p.x() & p.z())};
  }

  PauliString string() const { return {n_qubits, x, z}; }

  /// Sign s with this operator = s * string(); only defined when the result is Hermitian.
  int hermitian_sign() const {
    const int r = (((k - popcount(x & z)) % 4) + 4) % 4;
    if (r == 1 || r == 3) throw NumericalError("conjugated Pauli operator is not Hermitian");
    return r == 0 ? 1 : -1;
  }

  /// Replaces P by G P G^dagger for a Clifford gate G.
  void conjugate(const Gate& g) {
    const Mask t = Mask{1} << g.target;
    if (g.is_controlled() && g.kind != GateKind::CNOT) throw ValidationError("controlled gates are not tracked");
    switch (g.kind) {
      case GateKind::H: {
        const bool a = x & t, b = z & t;
        if (a && b) k += 2;
        x = (x & ~t) | (b ? t : 0);
        z = (z & ~t) | (a ? t : 0);
        break;
      }
      case GateKind::V:
        if (z & t) {
          k += 3;
          x ^= t;
        }
        break;
      case GateKind::Vdg:
        if (z & t) {
          k += 1;
          x ^= t;
        }
        break;
      case GateKind::X:
        if (z & t) k += 2;
        break;
      case GateKind::CNOT: {
        const Mask c = Mask{1} << g.control;
        if (x & c) x ^= t;
        if (z & t) z ^= c;
        break;
      }
      default: throw ValidationError("gate is not a tracked Clifford");
    }
    k &= 3;
  }

  void conjugate(const Circuit& c) {
    for (const auto& g : c.gates) conjugate(g);
  }
};

}  // namespace atomq
