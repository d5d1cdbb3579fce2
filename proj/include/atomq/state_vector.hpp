// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/pauli.hpp"

namespace atomq {

/// Amplitudes of an n-qubit register; basis index b has qubit 0 as its least
/// significant bit, i.e. |q_{n-1} ... q_0>.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 30;

  StateVector() = default;

  /// |0...0>.
  explicit StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits > kMaxQubits) throw ValidationError("state vectors support at most 30 qubits");
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
  }

  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits > kMaxQubits) throw ValidationError("state vectors support at most 30 qubits");
    if (amps_.size() != (std::size_t{1} << n_qubits)) throw ValidationError("amplitude count must be 2^n_qubits");
  }

  static StateVector basis(std::size_t n_qubits, Mask bits) {
    StateVector s(n_qubits);
    if (bits >= s.dim()) throw ValidationError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[bits] = 1.0;
    return s;
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  void normalize() {
    const double n = norm();
    if (n == 0.0) throw NumericalError("cannot normalize a zero state");
    for (auto& a : amps_) a /= n;
  }

  /// <this|other>.
  Complex inner(const StateVector& other) const {
    if (other.n_ != n_) throw ValidationError("qubit-count mismatch in inner product");
    Complex s{};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  /// Probability of measuring qubit q in |1>.
  double probability_one(std::size_t q) const {
    const Mask b = Mask{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (i & b) p += std::norm(amps_[i]);
    return p;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Complex> amps_;
};

/// Computational basis state; bits[q] is the value of qubit q.
inline StateVector prepare_basis_state(const std::vector<std::uint8_t>& bits) {
  Mask m = 0;
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q]) m |= Mask{1} << q;
  return StateVector::basis(bits.size(), m);
}

}  // namespace atomq
