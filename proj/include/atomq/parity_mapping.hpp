// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Parity encoding: qubit j stores p_j = (f_0 + ... + f_j) mod 2.
//
//   a_j  = X_{n-1} ... X_{j+1} (x) P-_j,   P-_j = 1/2 (X_j Z_{j-1} + i Y_j)
//   a+_j = X_{n-1} ... X_{j+1} (x) P+_j,   P+_j = 1/2 (X_j Z_{j-1} - i Y_j)
//
// For j = 0 the Z_{j-1} factor is the identity.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/pauli.hpp"
#include "atomq/qubit_hamiltonian.hpp"

namespace atomq {

inline constexpr double kMappingCutoff = 1e-12;

namespace detail {

inline std::vector<PauliTerm> parity_ladder(std::size_t j, std::size_t n_orbs, double y_sign) {
  if (j >= n_orbs) throw ValidationError("orbital index " + std::to_string(j) + " out of range");
  if (n_orbs > kMaxQubits) throw ValidationError("parity mapping supports at most 64 orbitals");
  const Mask all = n_orbs == 64 ? ~Mask{0} : (Mask{1} << n_orbs) - 1;
  const Mask above = all & ~((Mask{1} << (j + 1)) - 1);
  const Mask bj = Mask{1} << j;
  const Mask below = j == 0 ? 0 : Mask{1} << (j - 1);
  return {
      {{0.5, 0.0}, PauliString(n_orbs, above | bj, below)},
      {{0.0, 0.5 * y_sign}, PauliString(n_orbs, above | bj, bj)},
  };
}

}  // namespace detail

/// Parity-encoded annihilation operator a_j as a Pauli sum.
inline std::vector<PauliTerm> parity_annihilation(std::size_t j, std::size_t n_orbs) {
  return detail::parity_ladder(j, n_orbs, +1.0);
}

/// Parity-encoded creation operator a+_j (adjoint of a_j).
inline std::vector<PauliTerm> parity_creation(std::size_t j, std::size_t n_orbs) {
  return detail::parity_ladder(j, n_orbs, -1.0);
}

/// Cached ladder operators of one register, reused across many products.
class ParityLadders {
 public:
  explicit ParityLadders(std::size_t n_orbs) : n_(n_orbs) {
    for (std::size_t j = 0; j < n_orbs; ++j) {
      ann_.emplace_back(n_orbs, parity_annihilation(j, n_orbs));
      cre_.emplace_back(n_orbs, parity_creation(j, n_orbs));
    }
  }

  std::size_t n_orbs() const noexcept { return n_; }
  const PauliSum& annihilation(int j) const { return ann_.at(static_cast<std::size_t>(j)); }
  const PauliSum& creation(int j) const { return cre_.at(static_cast<std::size_t>(j)); }

 private:
  std::size_t n_;
  std::vector<PauliSum> ann_;
  std::vector<PauliSum> cre_;
};

/// Hamiltonian as a Pauli sum with real coefficients; terms below 1e-12 dropped.
inline QubitHamiltonian map_hamiltonian(const FermionHamiltonian& ham) {
  if (!ham.is_hermitian(kHermiticityTolerance)) throw NumericalError("fermion Hamiltonian is not Hermitian");
  const std::size_t n = ham.n_orbs;
  const ParityLadders ops(n);
  PauliSum sum(n);
  for (const auto& [k, v] : ham.h1) {
    PauliSum t = ops.creation(k[0]) * ops.annihilation(k[1]);
    t *= v;
    sum += t;
  }
  for (const auto& [k, v] : ham.h2) {
    if (k[0] == k[1] || k[2] == k[3]) continue;  // a+_p a+_p = a_r a_r = 0
    PauliSum t = (ops.creation(k[0]) * ops.creation(k[1])) * (ops.annihilation(k[2]) * ops.annihilation(k[3]));
    t *= 0.5 * v;
    sum += t;
  }

  double scale = 1.0;
  for (const auto& [p, c] : sum.terms()) scale = std::max(scale, std::abs(c));
  PauliSum real_sum(n);
  for (const auto& [p, c] : sum.terms()) {
    if (std::abs(c.imag()) > 1e-9 * scale)
      throw NumericalError("mapped Hamiltonian has an imaginary coefficient on " + p.to_string());
    real_sum.add({c.real(), 0.0}, p);
  }
  return QubitHamiltonian(real_sum, kMappingCutoff);
}

/// Occupations -> parity-encoded basis index (bit j = prefix parity up to j).
inline Mask parity_encode(const std::vector<std::uint8_t>& occupations) {
  if (occupations.size() > kMaxQubits) throw ValidationError("too many orbitals to encode");
  Mask bits = 0;
  unsigned parity = 0;
  for (std::size_t j = 0; j < occupations.size(); ++j) {
    parity ^= occupations[j] & 1U;
    if (parity) bits |= Mask{1} << j;
  }
  return bits;
}

/// Parity-encoded basis index -> occupations (f_j = p_j xor p_{j-1}).
inline std::vector<std::uint8_t> parity_decode(Mask bits, std::size_t n_orbs) {
  std::vector<std::uint8_t> occ(n_orbs);
  unsigned prev = 0;
  for (std::size_t j = 0; j < n_orbs; ++j) {
    const unsigned cur = (bits >> j) & 1U;
    occ[j] = static_cast<std::uint8_t>(cur ^ prev);
    prev = cur;
  }
  return occ;
}

}  // namespace atomq
