// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Integrals -> reordered orbitals -> parity-mapped qubits -> tapered qubits.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/exact.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/parity_mapping.hpp"
#include "atomq/pauli.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/simulator.hpp"
#include "atomq/state_vector.hpp"

namespace atomq {

/// How occupations of an odd-before-even orbital register land on qubits.
/// When tapering is active the parity qubit and the last qubit are fixed by
/// the sector and removed.
struct QubitEncoding {
  std::size_t n_orbs = 0;
  bool tapered = false;
  std::size_t parity_qubit = 0;
  std::size_t last_qubit = 0;
  TaperSector sector;

  std::size_t n_qubits() const noexcept { return tapered ? n_orbs - 2 : n_orbs; }

  /// Full parity-encoded operator -> operator on the encoded register.
  QubitHamiltonian encode(const QubitHamiltonian& full) const {
    if (full.n_qubits() != n_orbs) throw ValidationError("operator does not act on the orbital register");
    return tapered ? taper(full, sector, parity_qubit, last_qubit) : full;
  }

  Mask encode_determinant(const std::vector<std::uint8_t>& occupations) const {
    if (occupations.size() != n_orbs) throw ValidationError("determinant length does not match the register");
    const Mask full = parity_encode(occupations);
    if (!tapered) return full;
    if (sector_bits(full) != full_sector_bits())
      throw ValidationError("determinant lies outside the tapered symmetry sector");
    return delete_bits(full, {parity_qubit, last_qubit});
  }

  /// Encoded basis index -> occupations (tapered bits restored from the sector).
  std::vector<std::uint8_t> decode(Mask bits) const {
    if (!tapered) return parity_decode(bits, n_orbs);
    const Mask full = insert_bits(bits, {{parity_qubit, sector.whole_system_parity < 0},
                                         {last_qubit, sector.particle_parity < 0}});
    return parity_decode(full, n_orbs);
  }

 private:
  Mask sector_bits(Mask full) const { return full & ((Mask{1} << parity_qubit) | (Mask{1} << last_qubit)); }
  Mask full_sector_bits() const {
    return (sector.whole_system_parity < 0 ? Mask{1} << parity_qubit : 0) |
           (sector.particle_parity < 0 ? Mask{1} << last_qubit : 0);
  }
};

/// Tapering needs a parity qubit distinct from the last qubit, i.e. at least
/// one odd and one even orbital.
inline QubitEncoding make_encoding(const ReorderedSystem& sys, bool taper_if_possible = true) {
  QubitEncoding e;
  e.n_orbs = sys.basis.size();
  e.sector = TaperSector::of(sys.reference);
  if (taper_if_possible && sys.parity_qubit && static_cast<std::size_t>(*sys.parity_qubit) + 1 < e.n_orbs) {
    e.tapered = true;
    e.parity_qubit = static_cast<std::size_t>(*sys.parity_qubit);
    e.last_qubit = e.n_orbs - 1;
  }
  return e;
}

struct QubitProblem {
  ReorderedSystem system;
  QubitEncoding encoding;
  QubitHamiltonian full_hamiltonian;  // before tapering
  QubitHamiltonian hamiltonian;       // on the encoded register
  Mask reference_bits = 0;
  double reference_energy = 0.0;

  std::size_t n_qubits() const noexcept { return encoding.n_qubits(); }
  StateVector reference_state() const { return StateVector::basis(n_qubits(), reference_bits); }
};

inline QubitProblem build_problem(const OrbitalBasis& basis, const FermionHamiltonian& ham,
                                  const OccupationDeterminant& ref, bool taper_if_possible = true) {
  basis.validate();
  QubitProblem p;
  p.system = reorder_odd_before_even(basis, ham, ref);
  p.encoding = make_encoding(p.system, taper_if_possible);
  p.full_hamiltonian = map_hamiltonian(p.system.hamiltonian);
  p.hamiltonian = p.encoding.encode(p.full_hamiltonian);
  p.reference_bits = p.encoding.encode_determinant(p.system.reference.occupations());
  p.reference_energy = expectation(p.reference_state(), p.hamiltonian);
  return p;
}

inline QubitProblem build_problem(const AtomicSystem& sys, bool taper_if_possible = true) {
  return build_problem(sys.basis, sys.hamiltonian, sys.reference, taper_if_possible);
}

/// Lowest eigenpair of the encoded Hamiltonian among states with the
/// reference's electron count and total 2m.
inline GroundState sector_ground_state(const QubitProblem& p, const EigenOptions& opt = {}) {
  const auto& basis = p.system.basis;
  const int ne = p.system.reference.n_electrons(), two_m = p.system.reference.total_two_m();
  return exact_ground_energy(p.hamiltonian, opt, [&](Mask b) {
    const auto occ = p.encoding.decode(b);
    int n = 0, m = 0;
    for (std::size_t i = 0; i < occ.size(); ++i)
      if (occ[i]) ++n, m += basis[i].two_m;
    return n == ne && m == two_m;
  });
}

}  // namespace atomq
