// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Circuits for products of commuting Pauli exponentials
//
//   exp(-i sum_n alpha_n P_n / 2) = prod_n exp(-i alpha_n P_n / 2)
//
// either term by term (greedy) or through a simultaneous diagonalization
// G^dagger exp(-i sum_m beta_m Z_m / 2) G (three-step).

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/compiler/linear_map.hpp"
#include "atomq/compiler/tableau.hpp"
#include "atomq/error.hpp"
#include "atomq/pauli.hpp"

namespace atomq {

/// exp(-i angle P / 2).
struct PauliRotation {
  PauliString string;
  double angle = 0.0;

  bool operator==(const PauliRotation&) const = default;
};

struct ExponentialGroup {
  std::size_t n_qubits = 0;
  std::vector<PauliRotation> terms;

  ExponentialGroup() = default;
  explicit ExponentialGroup(std::size_t n) : n_qubits(n) {}
  ExponentialGroup(std::size_t n, std::vector<PauliRotation> t) : n_qubits(n), terms(std::move(t)) {
    for (const auto& r : terms)
      if (r.string.n_qubits() != n) throw ValidationError("group term has the wrong qubit count");
  }

  bool commuting() const {
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (std::size_t b = a + 1; b < terms.size(); ++b)
        if (!terms[a].string.commutes_with(terms[b].string)) return false;
    return true;
  }

  void require_commuting() const {
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (std::size_t b = a + 1; b < terms.size(); ++b)
        if (!terms[a].string.commutes_with(terms[b].string))
          throw ValidationError("group strings " + terms[a].string.to_string() + " and " + terms[b].string.to_string() +
                                " do not commute");
  }
};

namespace detail {

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

}  // namespace detail

/// Each exponential separately: H (X) or V (Y) basis change, CNOT ladder onto
/// the highest support qubit, Rz, and everything undone.
inline Circuit compile_greedy(const ExponentialGroup& group) {
  Circuit c(group.n_qubits);
  for (const auto& [p, alpha] : group.terms) {
    if (p.is_identity()) {
      c.global_phase -= alpha / 2;
      continue;
    }
    const auto support = detail::bits_of(p.support());
    for (int q : support) {
      const char op = p.at(static_cast<std::size_t>(q));
      if (op == 'X') c.add(Gate::h(q));
      else if (op == 'Y') c.add(Gate::v(q));
    }
    for (std::size_t i = 0; i + 1 < support.size(); ++i) c.add(Gate::cnot(support[i], support[i + 1]));
    c.add(Gate::rz(support.back(), alpha));
    for (std::size_t i = support.size() - 1; i > 0; --i) c.add(Gate::cnot(support[i - 1], support[i]));
    for (int q : support) {
      const char op = p.at(static_cast<std::size_t>(q));
      if (op == 'X') c.add(Gate::h(q));
      else if (op == 'Y') c.add(Gate::vdg(q));
    }
  }
  return c;
}

struct Diagonalization {
  Circuit clifford;                    // G: conjugates every group string to +-Z-type
  std::vector<PauliRotation> diagonal; // G P_n G^dagger with the sign folded into the angle
};

/// Simultaneous diagonalization by elimination on the symplectic tableau of
/// an independent generating set. The returned Clifford uses CNOT, H and V only.
inline Diagonalization diagonalize_group(const ExponentialGroup& group) {
  group.require_commuting();
  const std::size_t n = group.n_qubits;
  Diagonalization out{Circuit(n), {}};

  // independent generators, each reduced against the earlier ones
  std::vector<SignedPauli> gens;
  std::vector<std::pair<Mask, Mask>> pivot_of;  // one-hot (x, z) pivot per generator
  for (const auto& t : group.terms) {
    Mask x = t.string.x(), z = t.string.z();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((x & pivot_of[i].first) || (z & pivot_of[i].second)) {
        x ^= gens[i].x;
        z ^= gens[i].z;
      }
    if (!x && !z) continue;
    pivot_of.emplace_back(x & (~x + 1), x ? 0 : z & (~z + 1));
    gens.push_back({n, x, z, 0});
  }

  auto emit = [&](const Gate& g) {
    out.clifford.add(g);
    for (auto& s : gens) s.conjugate(g);
  };

  // reduced row echelon form of the X block; row operations are products of
  // generators, which keeps the generated group unchanged
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < gens.size(); ++col) {
    const Mask bit = Mask{1} << col;
    std::size_t r = rank;
    while (r < gens.size() && !(gens[r].x & bit)) ++r;
    if (r == gens.size()) continue;
    std::swap(gens[r], gens[rank]);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != rank && (gens[i].x & bit)) {
        gens[i].x ^= gens[rank].x;
        gens[i].z ^= gens[rank].z;
      }
    pivots.push_back(static_cast<int>(col));
    ++rank;
  }

  // clear the non-pivot X columns
  for (std::size_t i = 0; i < rank; ++i) {
    const int p = pivots[i];
    for (int q : detail::bits_of(gens[i].x))
      if (q != p) emit(Gate::cnot(p, q));
  }
  // the Z block on pivot columns is symmetric; clear its off-diagonal with CZ = H CNOT H
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      if (gens[i].z & (Mask{1} << pivots[j])) {
        emit(Gate::h(pivots[j]));
        emit(Gate::cnot(pivots[i], pivots[j]));
        emit(Gate::h(pivots[j]));
      }
  for (std::size_t i = 0; i < rank; ++i) {
    const Mask bit = Mask{1} << pivots[i];
    emit((gens[i].z & bit) ? Gate::v(pivots[i]) : Gate::h(pivots[i]));
  }

  for (const auto& t : group.terms) {
    SignedPauli s = SignedPauli::from(t.string);
    s.conjugate(out.clifford);
    if (s.x) throw NumericalError("diagonalization left an off-diagonal string");
    out.diagonal.push_back({s.string(), t.angle * s.hermitian_sign()});
  }
  return out;
}

struct PhaseNetwork {
  Circuit circuit;
  LinearMapGF2 residual;  // basis state |b> leaves the network as phase * |A b>
};

/// CNOT + Rz network applying exp(-i beta_m Z_m / 2) for every diagonal term.
/// Terms are visited in ascending bit-pattern order; each needed parity is
/// assembled from the current wire parities with the fewest CNOTs.
inline PhaseNetwork synthesize_phase_network(std::size_t n_qubits, std::vector<PauliRotation> terms) {
  PhaseNetwork out{Circuit(n_qubits), {}};
  for (const auto& t : terms) {
    if (t.string.n_qubits() != n_qubits) throw ValidationError("phase term has the wrong qubit count");
    if (!t.string.is_diagonal()) throw ValidationError("phase network needs Z/I strings, got " + t.string.to_string());
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PauliRotation& a, const PauliRotation& b) { return a.string.z() < b.string.z(); });

  std::vector<Mask> wires = LinearMapGF2::identity(n_qubits).rows();
  for (const auto& [p, beta] : terms) {
    const Mask v = p.z();
    if (!v) {
      out.circuit.global_phase -= beta / 2;
      continue;
    }
    // express v in the current wire basis: v = XOR of wires in S
    Mask coeffs = 0;
    {
      // invert by elimination on (wire vector | unit tag) pairs
      std::vector<std::pair<Mask, Mask>> rows;
      for (std::size_t w = 0; w < n_qubits; ++w) rows.emplace_back(wires[w], Mask{1} << w);
      Mask rem = v;
      for (std::size_t col = 0; col < n_qubits; ++col) {
        const Mask bit = Mask{1} << col;
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(col), rows.end(),
                               [&](const auto& r) { return r.first & bit; });
        if (it == rows.end()) throw NumericalError("wire parities became dependent");
        std::swap(*it, rows[col]);
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (i != col && (rows[i].first & bit)) {
            rows[i].first ^= rows[col].first;
            rows[i].second ^= rows[col].second;
          }
      }
      for (std::size_t col = 0; col < n_qubits; ++col)
        if (rem & (Mask{1} << col)) coeffs ^= rows[col].second;
    }
    const auto subset = detail::bits_of(coeffs);
    // target: the wire whose current parity has the largest overlap with v
    int target = subset.back();
    int best = -1;
    for (int w : subset) {
      const int score = popcount(wires[static_cast<std::size_t>(w)] & v);
      if (score >= best) best = score, target = w;
    }
    for (int w : subset)
      if (w != target) {
        out.circuit.add(Gate::cnot(w, target));
        wires[static_cast<std::size_t>(target)] ^= wires[static_cast<std::size_t>(w)];
      }
    out.circuit.add(Gate::rz(target, beta));
  }
  out.residual = LinearMapGF2(n_qubits, std::move(wires));
  return out;
}

/// G, then the phase network, then the CNOT network undoing its residual, then G^dagger.
inline Circuit compile_three_step(const ExponentialGroup& group) {
  const auto diag = diagonalize_group(group);
  const auto net = synthesize_phase_network(group.n_qubits, diag.diagonal);
  Circuit c = diag.clifford;
  c.append(net.circuit);
  c.append(synthesize_linear_inverse(net.residual));
  c.append(diag.clifford.inverse());
  return c;
}

enum class CompileStrategy { greedy, three_step };

inline Circuit compile_group(const ExponentialGroup& group, CompileStrategy s) {
  return s == CompileStrategy::greedy ? compile_greedy(group) : compile_three_step(group);
}

inline std::string to_string(CompileStrategy s) { return s == CompileStrategy::greedy ? "greedy" : "three-step"; }

}  // namespace atomq
