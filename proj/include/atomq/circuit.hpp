// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"

namespace atomq {

enum class GateKind { Rx, Ry, Rz, H, V, Vdg, X, Phase, CNOT };

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// One elementary gate. A non-negative `control` on a non-CNOT kind makes it
/// a singly-controlled gate; CNOT always carries its control.
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  int control = -1;
  double angle = 0.0;  // Rx/Ry/Rz angle or Phase delta

  static Gate rx(int q, double theta) { return {GateKind::Rx, q, -1, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::Ry, q, -1, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::Rz, q, -1, theta}; }
  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate v(int q) { return {GateKind::V, q, -1, 0.0}; }
  static Gate vdg(int q) { return {GateKind::Vdg, q, -1, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
  static Gate phase(int q, double delta) { return {GateKind::Phase, q, -1, delta}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, t, c, 0.0}; }
  static Gate controlled(Gate inner, int c) {
    if (inner.kind == GateKind::CNOT || inner.control >= 0)
      throw ValidationError("only single-qubit gates can be wrapped as controlled gates");
    inner.control = c;
    return inner;
  }

  bool is_controlled() const noexcept { return control >= 0; }
  bool is_parametric() const noexcept {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz || kind == GateKind::Phase;
  }
  int arity() const noexcept { return is_controlled() ? 2 : 1; }

  Gate inverse() const {
    Gate g = *this;
    switch (kind) {
      case GateKind::V: g.kind = GateKind::Vdg; break;
      case GateKind::Vdg: g.kind = GateKind::V; break;
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz:
      case GateKind::Phase: g.angle = -angle; break;
      default: break;
    }
    return g;
  }

  /// 2x2 matrix of the target action (X for CNOT).
  Matrix2 matrix() const {
    using namespace std::complex_literals;
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const double r = std::numbers::sqrt2 / 2;
    switch (kind) {
      case GateKind::Rx: return {{{c, -1i * s}, {-1i * s, c}}};
      case GateKind::Ry: return {{{c, -s}, {s, c}}};
      case GateKind::Rz: return {{{std::polar(1.0, -angle / 2), 0.0}, {0.0, std::polar(1.0, angle / 2)}}};
      case GateKind::H: return {{{r, r}, {r, -r}}};
      case GateKind::V: return {{{r, -1i * r}, {-1i * r, r}}};
      case GateKind::Vdg: return {{{r, 1i * r}, {1i * r, r}}};
      case GateKind::X:
      case GateKind::CNOT: return {{{0.0, 1.0}, {1.0, 0.0}}};
      case GateKind::Phase: return {{{1.0, 0.0}, {0.0, std::polar(1.0, angle)}}};
    }
    return {};
  }

  bool operator==(const Gate&) const = default;
};

/// Ordered gate list; the unitary is exp(i global_phase) * G_last ... G_first.
struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;
  double global_phase = 0.0;

  Circuit() = default;
  explicit Circuit(std::size_t n) : n_qubits(n) {}

  std::size_t size() const noexcept { return gates.size(); }
  bool empty() const noexcept { return gates.empty(); }

  Circuit& add(const Gate& g) {
    gates.push_back(g);
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits != n_qubits) throw ValidationError("cannot append circuits of different widths");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    global_phase += other.global_phase;
    return *this;
  }

  Circuit inverse() const {
    Circuit out(n_qubits);
    out.global_phase = -global_phase;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.gates.push_back(it->inverse());
    return out;
  }

  void validate() const {
    const int n = static_cast<int>(n_qubits);
    for (const auto& g : gates) {
      if (g.target < 0 || g.target >= n) throw ValidationError("gate target out of range");
      if (g.kind == GateKind::CNOT && g.control < 0) throw ValidationError("CNOT without control");
      if (g.control >= n) throw ValidationError("gate control out of range");
      if (g.control == g.target) throw ValidationError("gate control equals target");
      if (g.is_parametric() && !std::isfinite(g.angle)) throw ValidationError("non-finite gate angle");
    }
  }

  bool operator==(const Circuit&) const = default;
};

struct GateCounts {
  std::size_t single_qubit = 0;
  std::size_t cnot = 0;
  std::size_t other_two_qubit = 0;  // controlled gates that are not CNOT

  std::size_t total() const noexcept { return single_qubit + cnot + other_two_qubit; }
  GateCounts& operator+=(const GateCounts& o) {
    single_qubit += o.single_qubit;
    cnot += o.cnot;
    other_two_qubit += o.other_two_qubit;
    return *this;
  }
  bool operator==(const GateCounts&) const = default;
};

inline GateCounts gate_counts(const Circuit& c) {
  GateCounts out;
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::CNOT) ++out.cnot;
    else if (g.is_controlled()) ++out.other_two_qubit;
    else ++out.single_qubit;
  }
  return out;
}

namespace detail {

inline const char* gate_mnemonic(GateKind k) {
  switch (k) {
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::H: return "H";
    case GateKind::V: return "V";
    case GateKind::Vdg: return "VDG";
    case GateKind::X: return "X";
    case GateKind::Phase: return "P";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

inline bool gate_from_mnemonic(const std::string& s, GateKind& k) {
  static const std::pair<const char*, GateKind> table[] = {
      {"RX", GateKind::Rx}, {"RY", GateKind::Ry}, {"RZ", GateKind::Rz},   {"H", GateKind::H},
      {"V", GateKind::V},   {"VDG", GateKind::Vdg}, {"X", GateKind::X}, {"P", GateKind::Phase},
  };
  for (const auto& [name, kind] : table)
    if (s == name) {
      k = kind;
      return true;
    }
  return false;
}

}  // namespace detail

/// Line-per-gate text: `RZ <q> <theta>`, `CNOT <c> <t>`, `H <q>`, `V <q>`,
/// `VDG <q>`, `X <q>`, `P <q> <delta>`, `RX`/`RY` like RZ, controlled gates as
/// `C<name> <c> <t> [angle]`, and `GPHASE <phi>` when the global phase is nonzero.
inline void write_circuit(std::ostream& out, const Circuit& c) {
  out << "# qubits " << c.n_qubits << '\n';
  if (c.global_phase != 0.0) out << "GPHASE " << detail::format_double(c.global_phase) << '\n';
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::CNOT) {
      out << "CNOT " << g.control << ' ' << g.target << '\n';
      continue;
    }
    if (g.is_controlled()) out << 'C' << detail::gate_mnemonic(g.kind) << ' ' << g.control << ' ' << g.target;
    else out << detail::gate_mnemonic(g.kind) << ' ' << g.target;
    if (g.is_parametric()) out << ' ' << detail::format_double(g.angle);
    out << '\n';
  }
}

inline Circuit read_circuit(std::istream& in) {
  Circuit c;
  std::string raw;
  std::size_t line_no = 0;
  bool sized = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.rfind("# qubits", 0) == 0) {
      std::istringstream hdr(raw.substr(8));
      if (!(hdr >> c.n_qubits)) throw ParseError(line_no, "bad qubit-count header");
      sized = true;
      continue;
    }
    std::istringstream f(detail::strip_comment(raw));
    std::string name;
    if (!(f >> name)) continue;
    if (name == "GPHASE") {
      c.global_phase = detail::read_field<double>(f, line_no, "phase");
    } else if (name == "CNOT") {
      const int ctl = detail::read_field<int>(f, line_no, "control");
      const int tgt = detail::read_field<int>(f, line_no, "target");
      c.gates.push_back(Gate::cnot(ctl, tgt));
    } else {
      GateKind k{};
      const bool ctrl = name.size() > 1 && name[0] == 'C' && detail::gate_from_mnemonic(name.substr(1), k);
      if (!ctrl && !detail::gate_from_mnemonic(name, k)) throw ParseError(line_no, "unknown gate '" + name + "'");
      Gate g{k, 0, -1, 0.0};
      if (ctrl) g.control = detail::read_field<int>(f, line_no, "control");
      g.target = detail::read_field<int>(f, line_no, "target");
      if (g.is_parametric()) g.angle = detail::read_field<double>(f, line_no, "angle");
      c.gates.push_back(g);
    }
    detail::expect_end(f, line_no);
  }
  if (!sized) {
    int hi = -1;
    for (const auto& g : c.gates) hi = std::max({hi, g.target, g.control});
    c.n_qubits = static_cast<std::size_t>(hi + 1);
  }
  c.validate();
  return c;
}

}  // namespace atomq
