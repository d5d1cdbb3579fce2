// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Exact diagonalization of qubit Hamiltonians: dense for small (sub)spaces,
// restarted Lanczos otherwise.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/simulator.hpp"
#include "atomq/state_vector.hpp"

namespace atomq {

inline Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const auto [ph, t] = p.apply_to_basis(b);
    m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b)) = ph;
  }
  return m;
}

inline Eigen::MatrixXcd dense_matrix(const QubitHamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h)
    for (std::size_t b = 0; b < dim; ++b) {
      const auto [ph, r] = t.string.apply_to_basis(b);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) += t.coeff * ph;
    }
  return m;
}

/// Unitary of a circuit, column b = circuit applied to |b>.
inline Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    StateVector s = StateVector::basis(c.n_qubits, b);
    apply_circuit_in_place(s, c);
    for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = s[r];
  }
  return u;
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline StateVector from_eigen(std::size_t n_qubits, const Eigen::VectorXcd& v) {
  std::vector<Complex> a(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) a[static_cast<std::size_t>(i)] = v(i);
  return StateVector(n_qubits, std::move(a));
}

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

struct EigenOptions {
  /// Largest (sub)space handled by dense diagonalization.
  std::size_t dense_dim_limit = std::size_t{1} << 12;
  std::size_t max_qubits = 24;
  double residual_tol = 1e-9;
  std::size_t krylov_dim = 80;
  std::size_t max_restarts = 400;
  std::uint64_t seed = 0x5eed'1234'abcdULL;
};

/// Restricts diagonalization to basis states accepted by the predicate; the
/// Hamiltonian must not couple accepted and rejected states.
using BasisFilter = std::function<bool(Mask)>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline GroundState dense_ground(const QubitHamiltonian& h, const std::vector<Mask>& states) {
  const std::size_t n = h.n_qubits();
  const auto dim = static_cast<Eigen::Index>(states.size());
  std::vector<std::int64_t> index(std::size_t{1} << n, -1);
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<std::int64_t>(i);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h)
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto [ph, r] = t.string.apply_to_basis(states[i]);
      const auto j = index[r];
      if (j >= 0) m(j, static_cast<Eigen::Index>(i)) += t.coeff * ph;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  StateVector s(n, std::vector<Complex>(std::size_t{1} << n));
  for (std::size_t i = 0; i < states.size(); ++i) s[states[i]] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
  return {es.eigenvalues()(0), std::move(s)};
}

inline void project(StateVector& v, const std::vector<std::uint8_t>& allowed) {
  if (allowed.empty()) return;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (!allowed[i]) v[i] = 0.0;
}

inline void axpy(Complex a, const StateVector& x, StateVector& y) {
  for (std::size_t i = 0; i < y.dim(); ++i) y[i] += a * x[i];
}

/// Explicitly restarted Lanczos; keeps only three vectors in memory and
/// rebuilds the Krylov basis in a second pass to form the Ritz vector.
inline GroundState lanczos_ground(const QubitHamiltonian& h, const std::vector<std::uint8_t>& allowed,
                                  const EigenOptions& opt) {
  const std::size_t n = h.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  StateVector start(n, std::vector<Complex>(dim));
  std::uint64_t rng = opt.seed;
  for (std::size_t i = 0; i < dim; ++i)
    start[i] = static_cast<double>(splitmix64(rng) >> 11) * 0x1.0p-53 - 0.5;
  project(start, allowed);
  start.normalize();

  auto matvec = [&](const StateVector& v) {
    StateVector w = apply_hamiltonian(h, v);
    project(w, allowed);
    return w;
  };

  for (std::size_t restart = 0; restart < opt.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    {
      StateVector prev(n, std::vector<Complex>(dim)), cur = start;
      double b_prev = 0.0;
      for (std::size_t k = 0; k < opt.krylov_dim; ++k) {
        StateVector w = matvec(cur);
        const double a = cur.inner(w).real();
        alpha.push_back(a);
        axpy(-a, cur, w);
        axpy(-b_prev, prev, w);
        const double b = w.norm();
        if (b < 1e-12 || k + 1 == opt.krylov_dim) break;
        beta.push_back(b);
        for (auto& x : w.amplitudes()) x /= b;
        prev = std::move(cur);
        cur = std::move(w);
        b_prev = b;
      }
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);

    StateVector ritz(n, std::vector<Complex>(dim));
    {
      StateVector prev(n, std::vector<Complex>(dim)), cur = start;
      double b_prev = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        axpy(y(k), cur, ritz);
        if (k + 1 == m) break;
        StateVector w = matvec(cur);
        axpy(-alpha[static_cast<std::size_t>(k)], cur, w);
        axpy(-b_prev, prev, w);
        const double b = beta[static_cast<std::size_t>(k)];
        for (auto& x : w.amplitudes()) x /= b;
        prev = std::move(cur);
        cur = std::move(w);
        b_prev = b;
      }
    }
    ritz.normalize();
    StateVector hr = matvec(ritz);
    const double e = ritz.inner(hr).real();
    axpy(-e, ritz, hr);
    if (hr.norm() < opt.residual_tol) return {e, std::move(ritz)};
    start = std::move(ritz);
  }
  throw NumericalError("Lanczos did not converge");
}

}  // namespace detail

/// Lowest eigenvalue and a unit eigenvector, optionally within a symmetry sector.
inline GroundState exact_ground_energy(const QubitHamiltonian& h, const EigenOptions& opt = {},
                                       const BasisFilter& filter = {}) {
  h.require_hermitian();
  const std::size_t n = h.n_qubits();
  if (n > opt.max_qubits)
    throw ValidationError("exact diagonalization limited to " + std::to_string(opt.max_qubits) + " qubits");
  const std::size_t dim = std::size_t{1} << n;

  std::vector<Mask> states;
  std::vector<std::uint8_t> allowed;
  if (filter) {
    allowed.assign(dim, 0);
    for (Mask b = 0; b < dim; ++b)
      if (filter(b)) {
        allowed[b] = 1;
        states.push_back(b);
      }
    if (states.empty()) throw ValidationError("symmetry sector is empty");
  } else if (dim <= opt.dense_dim_limit) {
    states.resize(dim);
    for (Mask b = 0; b < dim; ++b) states[b] = b;
  }

  if (filter ? states.size() <= opt.dense_dim_limit : dim <= opt.dense_dim_limit) return detail::dense_ground(h, states);
  return detail::lanczos_ground(h, allowed, opt);
}

/// Full spectrum of a small Hamiltonian (dense), ascending.
inline Eigen::VectorXd spectrum(const QubitHamiltonian& h) {
  h.require_hermitian();
  if (h.n_qubits() > 12) throw ValidationError("dense spectrum limited to 12 qubits");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace atomq
