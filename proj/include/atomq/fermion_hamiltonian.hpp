// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Second-quantized electronic Hamiltonian
//
//   H = sum_pq h_pq a+_p a_q + 1/2 sum_pqrs h_pqrs a+_p a+_q a_r a_s
//
// together with the orbital metadata (parity, j, m) and the reference
// determinant. The 1/2 prefactor is NOT folded into the stored h_pqrs.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "atomq/error.hpp"

namespace atomq {

using Complex = std::complex<double>;

enum class OrbitalParity : std::uint8_t { even = 0, odd = 1 };

struct SpinOrbital {
  int index = 0;
  int n = 0;  // principal quantum number
  OrbitalParity parity = OrbitalParity::even;
  int two_j = 1;
  int two_m = 1;

  bool operator==(const SpinOrbital&) const = default;
};

enum class OrbitalOrdering { as_loaded, odd_before_even };

struct OrbitalBasis {
  std::vector<SpinOrbital> orbitals;
  OrbitalOrdering ordering = OrbitalOrdering::as_loaded;

  std::size_t size() const noexcept { return orbitals.size(); }
  const SpinOrbital& operator[](std::size_t i) const { return orbitals[i]; }

  /// Throws ValidationError if j/m are inconsistent or indices are not 0..N-1 in order.
  void validate() const {
    for (std::size_t i = 0; i < orbitals.size(); ++i) {
      const auto& o = orbitals[i];
      if (o.index != static_cast<int>(i))
        throw ValidationError("orbital indices must be contiguous and ordered; found " +
                              std::to_string(o.index) + " at position " + std::to_string(i));
      if (o.two_j <= 0 || o.two_j % 2 == 0)
        throw ValidationError("orbital " + std::to_string(i) + ": 2j must be a positive odd integer");
      if (o.two_m % 2 == 0 || std::abs(o.two_m) > o.two_j)
        throw ValidationError("orbital " + std::to_string(i) + ": 2m must be odd with |2m| <= 2j");
    }
  }

  bool is_odd_before_even() const {
    bool seen_even = false;
    for (const auto& o : orbitals) {
      if (o.parity == OrbitalParity::even) seen_even = true;
      else if (seen_even) return false;
    }
    return true;
  }

  std::size_t odd_count() const {
    return static_cast<std::size_t>(std::count_if(orbitals.begin(), orbitals.end(), [](const SpinOrbital& o) {
      return o.parity == OrbitalParity::odd;
    }));
  }
};

using OneBodyKey = std::array<int, 2>;
using TwoBodyKey = std::array<int, 4>;

struct FermionHamiltonian {
  std::size_t n_orbs = 0;
  std::map<OneBodyKey, Complex> h1;
  std::map<TwoBodyKey, Complex> h2;

  bool operator==(const FermionHamiltonian&) const = default;

  /// Largest |h_pq - conj(h_qp)| and |h_pqrs - conj(h_srqp)|; missing partners count as zero.
  double max_asymmetry() const {
    double worst = 0.0;
    for (const auto& [k, v] : h1) {
      const auto it = h1.find({k[1], k[0]});
      const Complex partner = it == h1.end() ? Complex{} : it->second;
      worst = std::max(worst, std::abs(v - std::conj(partner)));
    }
    for (const auto& [k, v] : h2) {
      const auto it = h2.find({k[3], k[2], k[1], k[0]});
      const Complex partner = it == h2.end() ? Complex{} : it->second;
      worst = std::max(worst, std::abs(v - std::conj(partner)));
    }
    return worst;
  }

  /// Replaces every entry by the average with its conjugate partner, inserting
  /// missing partners, so that max_asymmetry() becomes exactly zero.
  void symmetrize() {
    std::map<OneBodyKey, Complex> s1;
    for (const auto& [k, v] : h1) {
      const auto it = h1.find({k[1], k[0]});
      const Complex partner = it == h1.end() ? Complex{} : it->second;
      const Complex avg = 0.5 * (v + std::conj(partner));
      s1[k] = avg;
      s1[{k[1], k[0]}] = std::conj(avg);
    }
    std::map<TwoBodyKey, Complex> s2;
    for (const auto& [k, v] : h2) {
      const TwoBodyKey rk{k[3], k[2], k[1], k[0]};
      const auto it = h2.find(rk);
      const Complex partner = it == h2.end() ? Complex{} : it->second;
      const Complex avg = 0.5 * (v + std::conj(partner));
      s2[k] = avg;
      s2[rk] = std::conj(avg);
    }
    h1 = std::move(s1);
    h2 = std::move(s2);
  }

  bool is_hermitian(double tol = 1e-8) const { return max_asymmetry() <= tol; }
};

/// Occupation-number vector of one Slater determinant, with the symmetry
/// labels derived from a basis.
class OccupationDeterminant {
 public:
  OccupationDeterminant() = default;

  OccupationDeterminant(std::vector<std::uint8_t> occupations, const OrbitalBasis& basis)
      : occupations_(std::move(occupations)) {
    if (occupations_.size() != basis.size())
      throw ValidationError("determinant length does not match the basis size");
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
      if (occupations_[i] > 1) throw ValidationError("occupation numbers must be 0 or 1");
      if (!occupations_[i]) continue;
      ++n_electrons_;
      total_two_m_ += basis[i].two_m;
      total_parity_ ^= static_cast<int>(basis[i].parity);
    }
  }

  static OccupationDeterminant from_indices(const std::vector<int>& occupied, const OrbitalBasis& basis) {
    std::vector<std::uint8_t> occ(basis.size(), 0);
    for (int i : occupied) {
      if (i < 0 || static_cast<std::size_t>(i) >= basis.size())
        throw ValidationError("occupied orbital index " + std::to_string(i) + " out of range");
      if (occ[static_cast<std::size_t>(i)]) throw ValidationError("orbital " + std::to_string(i) + " listed twice");
      occ[static_cast<std::size_t>(i)] = 1;
    }
    return OccupationDeterminant(std::move(occ), basis);
  }

  const std::vector<std::uint8_t>& occupations() const noexcept { return occupations_; }
  std::size_t size() const noexcept { return occupations_.size(); }
  bool occupied(std::size_t i) const { return occupations_[i] != 0; }
  int n_electrons() const noexcept { return n_electrons_; }
  int total_two_m() const noexcept { return total_two_m_; }
  /// 0 = even, 1 = odd.
  int total_parity() const noexcept { return total_parity_; }

  std::vector<int> occupied_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < occupations_.size(); ++i)
      if (occupations_[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  bool operator==(const OccupationDeterminant&) const = default;

 private:
  std::vector<std::uint8_t> occupations_;
  int n_electrons_ = 0;
  int total_two_m_ = 0;
  int total_parity_ = 0;
};

/// Everything read from an integrals file.
struct AtomicSystem {
  OrbitalBasis basis;
  FermionHamiltonian hamiltonian;
  OccupationDeterminant reference;
  double max_asymmetry = 0.0;  // before symmetrization
};

inline constexpr double kHermiticityTolerance = 1e-8;

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

template <typename T>
T read_field(std::istringstream& in, std::size_t line_no, const char* what) {
  T value{};
  if (!(in >> value)) throw ParseError(line_no, std::string("expected ") + what);
  return value;
}

inline void expect_end(std::istringstream& in, std::size_t line_no) {
  std::string extra;
  if (in >> extra) throw ParseError(line_no, "unexpected trailing field '" + extra + "'");
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace detail

/// Parses the line-oriented integrals format:
///
///   NORB <int>
///   NELEC <int>
///   REF <i1> <i2> ...
///   ORB <idx> <n> <parity 0|1> <2j> <2m>
///   H1 <p> <q> <re> <im>
///   H2 <p> <q> <r> <s> <re> <im>
///
/// NORB must precede any line carrying an orbital index. Entries not listed
/// are zero. The Hamiltonian is symmetrized after the asymmetry check.
inline AtomicSystem parse_integrals(std::istream& in) {
  std::optional<int> norb;
  std::optional<int> nelec;
  std::optional<std::vector<int>> ref;
  std::size_t ref_line = 0;
  std::vector<std::optional<SpinOrbital>> orbs;
  FermionHamiltonian ham;

  auto check_index = [&](int idx, std::size_t line_no) {
    if (!norb) throw ParseError(line_no, "NORB must be given before orbital indices");
    if (idx < 0 || idx >= *norb)
      throw ParseError(line_no, "orbital index " + std::to_string(idx) + " out of range [0, " +
                                    std::to_string(*norb) + ")");
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream fields(detail::strip_comment(raw));
    std::string key;
    if (!(fields >> key)) continue;

    if (key == "NORB") {
      if (norb) throw ParseError(line_no, "duplicate NORB");
      const int n = detail::read_field<int>(fields, line_no, "orbital count");
      if (n <= 0) throw ParseError(line_no, "NORB must be positive");
      detail::expect_end(fields, line_no);
      norb = n;
      orbs.assign(static_cast<std::size_t>(n), std::nullopt);
      ham.n_orbs = static_cast<std::size_t>(n);
    } else if (key == "NELEC") {
      if (nelec) throw ParseError(line_no, "duplicate NELEC");
      const int n = detail::read_field<int>(fields, line_no, "electron count");
      if (n < 0) throw ParseError(line_no, "NELEC must be non-negative");
      detail::expect_end(fields, line_no);
      nelec = n;
    } else if (key == "REF") {
      if (ref) throw ParseError(line_no, "duplicate REF");
      std::vector<int> occ;
      std::string tok;
      while (fields >> tok) {
        try {
          std::size_t used = 0;
          const int idx = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          check_index(idx, line_no);
          occ.push_back(idx);
        } catch (const std::logic_error&) {
          throw ParseError(line_no, "bad REF index '" + tok + "'");
        }
      }
      if (!norb) throw ParseError(line_no, "NORB must be given before REF");
      ref = std::move(occ);
      ref_line = line_no;
    } else if (key == "ORB") {
      SpinOrbital o;
      o.index = detail::read_field<int>(fields, line_no, "orbital index");
      o.n = detail::read_field<int>(fields, line_no, "principal quantum number");
      const int par = detail::read_field<int>(fields, line_no, "parity");
      o.two_j = detail::read_field<int>(fields, line_no, "2j");
      o.two_m = detail::read_field<int>(fields, line_no, "2m");
      detail::expect_end(fields, line_no);
      check_index(o.index, line_no);
      if (par != 0 && par != 1) throw ParseError(line_no, "parity must be 0 or 1");
      o.parity = static_cast<OrbitalParity>(par);
      if (o.two_j <= 0 || o.two_j % 2 == 0) throw ParseError(line_no, "2j must be a positive odd integer");
      if (o.two_m % 2 == 0 || std::abs(o.two_m) > o.two_j)
        throw ParseError(line_no, "2m must be odd with |2m| <= 2j");
      auto& slot = orbs[static_cast<std::size_t>(o.index)];
      if (slot) throw ParseError(line_no, "orbital " + std::to_string(o.index) + " defined twice");
      slot = o;
    } else if (key == "H1") {
      OneBodyKey k{};
      for (auto& i : k) {
        i = detail::read_field<int>(fields, line_no, "orbital index");
        check_index(i, line_no);
      }
      const double re = detail::read_field<double>(fields, line_no, "real part");
      const double im = detail::read_field<double>(fields, line_no, "imaginary part");
      detail::expect_end(fields, line_no);
      if (!ham.h1.emplace(k, Complex{re, im}).second) throw ParseError(line_no, "duplicate H1 entry");
    } else if (key == "H2") {
      TwoBodyKey k{};
      for (auto& i : k) {
        i = detail::read_field<int>(fields, line_no, "orbital index");
        check_index(i, line_no);
      }
      const double re = detail::read_field<double>(fields, line_no, "real part");
      const double im = detail::read_field<double>(fields, line_no, "imaginary part");
      detail::expect_end(fields, line_no);
      if (!ham.h2.emplace(k, Complex{re, im}).second) throw ParseError(line_no, "duplicate H2 entry");
    } else {
      throw ParseError(line_no, "unknown keyword '" + key + "'");
    }
  }

  if (!norb) throw ParseError(0, "missing NORB");
  if (!ref) throw ParseError(0, "missing REF");
  AtomicSystem sys;
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    if (!orbs[i]) throw ParseError(0, "missing ORB line for orbital " + std::to_string(i));
    sys.basis.orbitals.push_back(*orbs[i]);
  }
  if (nelec && static_cast<std::size_t>(*nelec) != ref->size())
    throw ParseError(ref_line, "REF lists " + std::to_string(ref->size()) + " orbitals but NELEC is " +
                                   std::to_string(*nelec));
  try {
    sys.reference = OccupationDeterminant::from_indices(*ref, sys.basis);
  } catch (const ValidationError& e) {
    throw ParseError(ref_line, e.what());
  }

  sys.max_asymmetry = ham.max_asymmetry();
  if (sys.max_asymmetry > kHermiticityTolerance)
    throw ValidationError("integrals are not Hermitian: max asymmetry " + detail::format_double(sys.max_asymmetry));
  ham.symmetrize();
  sys.hamiltonian = std::move(ham);
  return sys;
}

inline AtomicSystem load_integrals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open integrals file '" + path + "'");
  return parse_integrals(in);
}

/// Writes a file that parse_integrals reads back into identical maps.
inline void write_integrals(std::ostream& out, const OrbitalBasis& basis, const FermionHamiltonian& ham,
                            const OccupationDeterminant& ref) {
  out << "NORB " << basis.size() << '\n';
  out << "NELEC " << ref.n_electrons() << '\n';
  out << "REF";
  for (int i : ref.occupied_indices()) out << ' ' << i;
  out << '\n';
  for (const auto& o : basis.orbitals)
    out << "ORB " << o.index << ' ' << o.n << ' ' << static_cast<int>(o.parity) << ' ' << o.two_j << ' '
        << o.two_m << '\n';
  for (const auto& [k, v] : ham.h1)
    out << "H1 " << k[0] << ' ' << k[1] << ' ' << detail::format_double(v.real()) << ' '
        << detail::format_double(v.imag()) << '\n';
  for (const auto& [k, v] : ham.h2)
    out << "H2 " << k[0] << ' ' << k[1] << ' ' << k[2] << ' ' << k[3] << ' ' << detail::format_double(v.real())
        << ' ' << detail::format_double(v.imag()) << '\n';
}

struct ReorderedSystem {
  OrbitalBasis basis;
  FermionHamiltonian hamiltonian;
  OccupationDeterminant reference;
  std::vector<int> permutation;  // permutation[new_index] = old_index
  /// Position of the last odd orbital, whose parity qubit stores the
  /// spatial parity of the whole system; empty when there are no odd orbitals.
  std::optional<int> parity_qubit;
};

/// Stable reordering that puts every odd-parity orbital before every even one.
inline ReorderedSystem reorder_odd_before_even(const OrbitalBasis& basis, const FermionHamiltonian& ham,
                                               const OccupationDeterminant& ref) {
  const std::size_t n = basis.size();
  if (ham.n_orbs != n || ref.size() != n) throw ValidationError("basis, Hamiltonian and reference sizes differ");

  ReorderedSystem out;
  for (int pass : {1, 0})
    for (std::size_t i = 0; i < n; ++i)
      if (static_cast<int>(basis[i].parity) == pass) out.permutation.push_back(static_cast<int>(i));

  std::vector<int> new_of_old(n);
  for (std::size_t k = 0; k < n; ++k) new_of_old[static_cast<std::size_t>(out.permutation[k])] = static_cast<int>(k);
  auto remap = [&](int old) { return new_of_old[static_cast<std::size_t>(old)]; };

  out.basis.ordering = OrbitalOrdering::odd_before_even;
  std::vector<std::uint8_t> occ(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto old = static_cast<std::size_t>(out.permutation[k]);
    SpinOrbital o = basis[old];
    o.index = static_cast<int>(k);
    out.basis.orbitals.push_back(o);
    occ[k] = ref.occupations()[old];
  }
  out.reference = OccupationDeterminant(std::move(occ), out.basis);

  out.hamiltonian.n_orbs = n;
  for (const auto& [k, v] : ham.h1) out.hamiltonian.h1[{remap(k[0]), remap(k[1])}] = v;
  for (const auto& [k, v] : ham.h2)
    out.hamiltonian.h2[{remap(k[0]), remap(k[1]), remap(k[2]), remap(k[3])}] = v;

  const std::size_t n_odd = basis.odd_count();
  if (n_odd > 0) out.parity_qubit = static_cast<int>(n_odd) - 1;
  return out;
}

}  // namespace atomq
