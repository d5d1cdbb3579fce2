// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Pauli strings in symplectic form. Qubit q carries
//   I if x_q = z_q = 0,  X if x_q = 1 only,  Z if z_q = 1 only,  Y if both.
// As an operator, P = i^{|x & z|} X^x Z^z, so P|b> = i^{|x&z|} (-1)^{|z&b|} |b ^ x>.

#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "atomq/error.hpp"

namespace atomq {

using Complex = std::complex<double>;
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxQubits = 64;

inline int popcount(Mask m) noexcept { return std::popcount(m); }

/// i^k for integer k.
inline Complex i_pow(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

class PauliString {
 public:
  PauliString() = default;
  PauliString(std::size_t n_qubits, Mask x, Mask z) : n_(n_qubits), x_(x), z_(z) {
    if (n_qubits > kMaxQubits) throw ValidationError("Pauli strings support at most 64 qubits");
    const Mask lim = n_qubits == 64 ? ~Mask{0} : ((Mask{1} << n_qubits) - 1);
    if ((x & ~lim) || (z & ~lim)) throw ValidationError("Pauli mask exceeds the qubit count");
  }

  static PauliString identity(std::size_t n_qubits) { return {n_qubits, 0, 0}; }

  /// Single-qubit factor 'I', 'X', 'Y' or 'Z' on qubit q.
  static PauliString single(std::size_t n_qubits, std::size_t q, char op) {
    const Mask b = Mask{1} << q;
    switch (op) {
      case 'I': return {n_qubits, 0, 0};
      case 'X': return {n_qubits, b, 0};
      case 'Y': return {n_qubits, b, b};
      case 'Z': return {n_qubits, 0, b};
      default: throw ValidationError(std::string("unknown Pauli factor '") + op + "'");
    }
  }

  /// Leftmost character is the highest qubit index.
  static PauliString parse(std::string_view s) {
    const std::size_t n = s.size();
    Mask x = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Mask b = Mask{1} << (n - 1 - i);
      switch (s[i]) {
        case 'I': break;
        case 'X': x |= b; break;
        case 'Y': x |= b; z |= b; break;
        case 'Z': z |= b; break;
        default: throw ParseError(0, "invalid Pauli character '" + std::string(1, s[i]) + "'");
      }
    }
    return {n, x, z};
  }

  std::size_t n_qubits() const noexcept { return n_; }
  Mask x() const noexcept { return x_; }
  Mask z() const noexcept { return z_; }
  Mask support() const noexcept { return x_ | z_; }
  int weight() const noexcept { return popcount(x_ | z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }

  char at(std::size_t q) const noexcept {
    const bool xb = (x_ >> q) & 1U, zb = (z_ >> q) & 1U;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  std::string to_string() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) s[n_ - 1 - q] = at(q);
    return s;
  }

  /// Symplectic inner product is zero.
  bool commutes_with(const PauliString& o) const noexcept {
    return ((popcount(x_ & o.z_) + popcount(z_ & o.x_)) & 1) == 0;
  }

  /// Returns (phase, string) with this * o = phase * string.
  std::pair<Complex, PauliString> multiply(const PauliString& o) const {
    const Mask x = x_ ^ o.x_, z = z_ ^ o.z_;
    const int k = popcount(x_ & z_) + popcount(o.x_ & o.z_) + 2 * popcount(z_ & o.x_) - popcount(x & z);
    return {i_pow(k), PauliString(std::max(n_, o.n_), x, z)};
  }

  /// Amplitude and target of P|b>.
  std::pair<Complex, Mask> apply_to_basis(Mask b) const noexcept {
    const int k = popcount(x_ & z_) + 2 * popcount(z_ & b);
    return {i_pow(k), b ^ x_};
  }

  auto operator<=>(const PauliString& o) const noexcept {
    return std::tie(n_, x_, z_) <=> std::tie(o.n_, o.x_, o.z_);
  }
  bool operator==(const PauliString&) const = default;

 private:
  std::size_t n_ = 0;
  Mask x_ = 0;
  Mask z_ = 0;
};

struct PauliTerm {
  Complex coeff;
  PauliString string;

  bool operator==(const PauliTerm&) const = default;
};

/// Sparse linear combination of Pauli strings on a fixed register.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}
  PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_(n_qubits) {
    for (auto& t : terms) add(t.coeff, t.string);
  }

  std::size_t n_qubits() const noexcept { return n_; }
  const std::map<PauliString, Complex>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(Complex c, const PauliString& p) {
    if (p.n_qubits() != n_) throw ValidationError("Pauli string register size mismatch");
    terms_[p] += c;
  }

  PauliSum& operator+=(const PauliSum& o) {
    for (const auto& [p, c] : o.terms_) add(c, p);
    return *this;
  }

  PauliSum& operator*=(Complex s) {
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_) throw ValidationError("Pauli sum register size mismatch");
    PauliSum out(a.n_);
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) {
        auto [ph, p] = pa.multiply(pb);
        out.terms_[p] += ca * cb * ph;
      }
    return out;
  }

  PauliSum adjoint() const {
    PauliSum out(n_);
    for (const auto& [p, c] : terms_) out.terms_[p] = std::conj(c);
    return out;
  }

  /// Drops terms with |coeff| < tol.
  void prune(double tol) {
    std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  }

  std::vector<PauliTerm> to_terms() const {
    std::vector<PauliTerm> out;
    out.reserve(terms_.size());
    for (const auto& [p, c] : terms_) out.push_back({c, p});
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::map<PauliString, Complex> terms_;
};

/// Removes the listed bit positions from a mask and compacts the rest downwards.
inline Mask delete_bits(Mask m, std::vector<std::size_t> positions) {
  std::sort(positions.begin(), positions.end(), std::greater<>());
  for (std::size_t pos : positions) {
    const Mask low = m & ((Mask{1} << pos) - 1);
    const Mask high = pos + 1 >= 64 ? 0 : (m >> (pos + 1)) << pos;
    m = low | high;
  }
  return m;
}

/// Inverse of delete_bits: spreads a compact mask, inserting the given bit values.
inline Mask insert_bits(Mask m, std::vector<std::pair<std::size_t, bool>> inserts) {
  std::sort(inserts.begin(), inserts.end());
  for (const auto& [pos, bit] : inserts) {
    const Mask low = m & ((Mask{1} << pos) - 1);
    const Mask high = (m >> pos) << (pos + 1);
    m = low | high | (bit ? Mask{1} << pos : 0);
  }
  return m;
}

}  // namespace atomq
