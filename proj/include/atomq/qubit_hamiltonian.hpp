// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/pauli.hpp"

namespace atomq {

/// Weighted sum of distinct Pauli strings, kept in canonical (n, x, z) order.
class QubitHamiltonian {
 public:
  QubitHamiltonian() = default;
  explicit QubitHamiltonian(std::size_t n_qubits) : n_(n_qubits) {}

  /// Combines like terms and drops |coeff| < cutoff (exact zeros are always dropped).
  QubitHamiltonian(std::size_t n_qubits, const std::vector<PauliTerm>& terms, double cutoff = 0.0)
      : QubitHamiltonian(PauliSum(n_qubits, terms), cutoff) {}

  explicit QubitHamiltonian(const PauliSum& sum, double cutoff = 0.0) : n_(sum.n_qubits()) {
    for (const auto& [p, c] : sum.terms()) {
      const double mag = std::abs(c);
      if (mag == 0.0 || mag < cutoff) continue;
      terms_.push_back({c, p});
    }
  }

  std::size_t n_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  bool is_hermitian(double tol = 1e-10) const {
    return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
  }

  void require_hermitian(double tol = 1e-10) const {
    if (!is_hermitian(tol)) throw NumericalError("Hamiltonian has complex Pauli coefficients (not Hermitian)");
  }

  /// Coefficient of the identity string.
  double constant() const {
    for (const auto& t : terms_)
      if (t.string.is_identity()) return t.coeff.real();
    return 0.0;
  }

  /// Sum of |coeff|, an upper bound on the spectral radius.
  double one_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
  }

  bool operator==(const QubitHamiltonian&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// One term per line: `<re> <im> <string>`, string leftmost = highest qubit.
inline void write_qubit_hamiltonian(std::ostream& out, const QubitHamiltonian& h) {
  for (const auto& t : h)
    out << detail::format_double(t.coeff.real()) << ' ' << detail::format_double(t.coeff.imag()) << ' '
        << t.string.to_string() << '\n';
}

inline QubitHamiltonian read_qubit_hamiltonian(std::istream& in) {
  std::vector<PauliTerm> terms;
  std::size_t n = 0;
  bool sized = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream fields(detail::strip_comment(raw));
    double re = 0, im = 0;
    std::string s;
    if (!(fields >> re)) {
      if (fields.eof()) continue;
      throw ParseError(line_no, "expected real part");
    }
    if (!(fields >> im >> s)) throw ParseError(line_no, "expected `<re> <im> <string>`");
    detail::expect_end(fields, line_no);
    PauliString p;
    try {
      p = PauliString::parse(s);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!sized) {
      n = p.n_qubits();
      sized = true;
    } else if (p.n_qubits() != n) {
      throw ParseError(line_no, "inconsistent Pauli string length");
    }
    terms.push_back({{re, im}, p});
  }
  return QubitHamiltonian(n, terms);
}

/// Symmetry eigenvalues (+1 or -1) substituted for Z on the two tapered qubits.
struct TaperSector {
  int whole_system_parity = 1;  // for the qubit of the last odd orbital
  int particle_parity = 1;      // for the last qubit

  /// Sector of a reference determinant: (-1)^{spatial parity}, (-1)^{N_e}.
  static TaperSector of(const OccupationDeterminant& ref) {
    return {ref.total_parity() ? -1 : 1, (ref.n_electrons() % 2) ? -1 : 1};
  }

  bool operator==(const TaperSector&) const = default;
};

/// Removes two qubits on which every term is I or Z, substituting the sector
/// eigenvalues, and compacts the remaining qubit indices.
inline QubitHamiltonian taper(const QubitHamiltonian& ham, const TaperSector& sector, std::size_t parity_qubit,
                              std::size_t last_qubit) {
  for (int v : {sector.whole_system_parity, sector.particle_parity})
    if (v != 1 && v != -1) throw ValidationError("taper sector values must be +1 or -1");
  if (parity_qubit == last_qubit) throw ValidationError("tapered qubits must be distinct");
  if (parity_qubit >= ham.n_qubits() || last_qubit >= ham.n_qubits())
    throw ValidationError("tapered qubit index out of range");
  if (ham.n_qubits() < 2) throw ValidationError("tapering needs at least two qubits");

  const Mask pb = Mask{1} << parity_qubit, lb = Mask{1} << last_qubit;
  PauliSum out(ham.n_qubits() - 2);
  for (const auto& t : ham) {
    const auto& p = t.string;
    if (p.x() & (pb | lb))
      throw ValidationError("term " + p.to_string() + " acts with X or Y on a tapered qubit (symmetry violated)");
    Complex c = t.coeff;
    if (p.z() & pb) c *= sector.whole_system_parity;
    if (p.z() & lb) c *= sector.particle_parity;
    const Mask z = delete_bits(p.z() & ~(pb | lb), {parity_qubit, last_qubit});
    const Mask x = delete_bits(p.x(), {parity_qubit, last_qubit});
    out.add(c, PauliString(ham.n_qubits() - 2, x, z));
  }
  return QubitHamiltonian(out, 1e-12);
}

/// Greedy colouring of the anticommutation graph, heaviest terms first.
/// Groups are returned in creation order, each in canonical string order.
inline std::vector<std::vector<PauliTerm>> partition_commuting(const QubitHamiltonian& ham) {
  std::vector<std::size_t> order(ham.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& terms = ham.terms();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(terms[a].coeff) > std::abs(terms[b].coeff);
  });

  std::vector<std::vector<PauliTerm>> groups;
  for (std::size_t idx : order) {
    const auto& t = terms[idx];
    auto fits = [&](const std::vector<PauliTerm>& g) {
      return std::all_of(g.begin(), g.end(), [&](const PauliTerm& u) { return u.string.commutes_with(t.string); });
    };
    auto it = std::find_if(groups.begin(), groups.end(), fits);
    if (it == groups.end()) groups.push_back({t});
    else it->push_back(t);
  }
  for (auto& g : groups)
    std::sort(g.begin(), g.end(), [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  return groups;
}

}  // namespace atomq
