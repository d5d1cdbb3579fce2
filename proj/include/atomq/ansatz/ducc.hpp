// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Disentangled unitary coupled cluster with singles and doubles:
//
//   |psi> = prod_mu exp(t_mu (tau_mu - tau_mu^dagger)) |ref>
//
// Each factor is one commuting group exp(-i t G) with G = i (tau - tau^dagger),
// G = sum_n c_n P_n, so the rotation angle of P_n is 2 t c_n.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "atomq/ansatz/parametric.hpp"
#include "atomq/compiler/compile.hpp"
#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/parity_mapping.hpp"
#include "atomq/problem.hpp"

namespace atomq {

/// Moves electrons from `occupied` to `virtuals` (both ascending).
/// tau = a+_a a_i for singles and a+_a a+_b a_j a_i for doubles.
struct Excitation {
  std::vector<int> occupied;
  std::vector<int> virtuals;

  std::size_t rank() const noexcept { return occupied.size(); }
  std::string label() const {
    std::string s;
    for (int i : occupied) s += std::to_string(i) + ' ';
    s += "->";
    for (int a : virtuals) s += ' ' + std::to_string(a);
    return s;
  }

  auto operator<=>(const Excitation&) const = default;
};

/// All singles and doubles conserving total 2m and spatial parity; singles
/// first, then doubles, each sorted by (occupied, virtual).
inline std::vector<Excitation> enumerate_sd_excitations(const OrbitalBasis& basis, const OccupationDeterminant& ref) {
  if (ref.size() != basis.size()) throw ValidationError("reference does not match the basis");
  std::vector<int> occ, vir;
  for (std::size_t i = 0; i < basis.size(); ++i) (ref.occupied(i) ? occ : vir).push_back(static_cast<int>(i));
  auto m = [&](int i) { return basis[static_cast<std::size_t>(i)].two_m; };
  auto par = [&](int i) { return static_cast<int>(basis[static_cast<std::size_t>(i)].parity); };

  std::vector<Excitation> out;
  for (int i : occ)
    for (int a : vir)
      if (m(i) == m(a) && par(i) == par(a)) out.push_back({{i}, {a}});
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t u = 0; u < vir.size(); ++u)
        for (std::size_t w = u + 1; w < vir.size(); ++w) {
          const int i = occ[x], j = occ[y], a = vir[u], b = vir[w];
          if (m(i) + m(j) == m(a) + m(b) && (par(i) + par(j) + par(a) + par(b)) % 2 == 0)
            out.push_back({{i, j}, {a, b}});
        }
  return out;
}

/// Occupation masks the ordered product of excitation exponentials can
/// populate from the reference, sorted ascending. Each factor maps a
/// determinant to itself, its excitation or its de-excitation, so products
/// of singles and doubles can reach higher excitations.
inline std::vector<Mask> sd_reachable_determinants(const OrbitalBasis& basis, const OccupationDeterminant& ref) {
  Mask r = 0;
  for (int i : ref.occupied_indices()) r |= Mask{1} << i;
  std::set<Mask> seen{r};
  for (const auto& e : enumerate_sd_excitations(basis, ref)) {
    Mask from = 0, to = 0;
    for (int i : e.occupied) from |= Mask{1} << i;
    for (int a : e.virtuals) to |= Mask{1} << a;
    std::vector<Mask> next;
    for (Mask d : seen) {
      if ((d & from) == from && !(d & to)) next.push_back((d & ~from) | to);
      if ((d & to) == to && !(d & from)) next.push_back((d & ~to) | from);
    }
    seen.insert(next.begin(), next.end());
  }
  return {seen.begin(), seen.end()};
}

/// G = i (tau - tau^dagger) on the encoded register, as rotations with angle
/// 2 c_n per unit amplitude.
inline ExponentialGroup excitation_generators(const Excitation& e, const QubitEncoding& enc,
                                              const ParityLadders& ops) {
  if (e.occupied.size() != e.virtuals.size() || e.rank() < 1 || e.rank() > 2)
    throw ValidationError("only single and double excitations are supported");
  PauliSum tau = e.rank() == 1 ? ops.creation(e.virtuals[0]) * ops.annihilation(e.occupied[0])
                               : (ops.creation(e.virtuals[0]) * ops.creation(e.virtuals[1])) *
                                     (ops.annihilation(e.occupied[1]) * ops.annihilation(e.occupied[0]));
  PauliSum g = tau.adjoint();
  g *= Complex{-1.0, 0.0};
  g += tau;
  g *= Complex{0.0, 1.0};

  PauliSum real_g(g.n_qubits());
  for (const auto& [p, c] : g.terms()) {
    if (std::abs(c.imag()) > 1e-12) throw NumericalError("excitation generator is not Hermitian");
    real_g.add({c.real(), 0.0}, p);
  }
  const QubitHamiltonian encoded = enc.encode(QubitHamiltonian(real_g, kMappingCutoff));
  ExponentialGroup group(encoded.n_qubits());
  for (const auto& t : encoded) group.terms.push_back({t.string, 2.0 * t.coeff.real()});
  group.require_commuting();
  return group;
}

inline ExponentialGroup excitation_generators(const Excitation& e, const QubitEncoding& enc) {
  return excitation_generators(e, enc, ParityLadders(enc.n_orbs));
}

class DuccAnsatz {
 public:
  /// `basis` and `ref` must already be in the encoding's orbital order.
  DuccAnsatz(const OrbitalBasis& basis, const OccupationDeterminant& ref, const QubitEncoding& enc)
      : encoding_(enc), excitations_(enumerate_sd_excitations(basis, ref)) {
    if (basis.size() != enc.n_orbs) throw ValidationError("basis does not match the encoding");
    reference_bits_ = enc.encode_determinant(ref.occupations());
    const ParityLadders ops(enc.n_orbs);
    for (const auto& e : excitations_) generators_.push_back(excitation_generators(e, enc, ops));
  }

  explicit DuccAnsatz(const QubitProblem& p) : DuccAnsatz(p.system.basis, p.system.reference, p.encoding) {}

  std::size_t n_qubits() const noexcept { return encoding_.n_qubits(); }
  std::size_t n_params() const noexcept { return excitations_.size(); }
  const std::vector<Excitation>& excitations() const noexcept { return excitations_; }
  const std::vector<ExponentialGroup>& generators() const noexcept { return generators_; }
  Mask reference_bits() const noexcept { return reference_bits_; }

  /// X gates preparing the reference, then one compiled block per excitation.
  ParametricCircuit program(CompileStrategy strategy) const {
    ParametricCircuit pc(n_qubits(), n_params());
    for (int q : detail::bits_of(reference_bits_)) pc.add_fixed(Gate::x(q));
    for (std::size_t k = 0; k < generators_.size(); ++k)
      pc.append_scaled(compile_group(generators_[k], strategy), static_cast<int>(k));
    return pc;
  }

 private:
  QubitEncoding encoding_;
  std::vector<Excitation> excitations_;
  std::vector<ExponentialGroup> generators_;
  Mask reference_bits_ = 0;
};

inline Circuit build_ducc_circuit(const DuccAnsatz& ansatz, std::span<const double> theta, CompileStrategy strategy) {
  if (theta.size() != ansatz.n_params())
    throw ValidationError("expected " + std::to_string(ansatz.n_params()) + " amplitudes, got " +
                          std::to_string(theta.size()));
  return ansatz.program(strategy).bind(theta);
}

}  // namespace atomq
