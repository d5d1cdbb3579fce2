// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Iterative phase estimation with one ancilla.
//
// With t = 2 pi / dE and -(E0 - E')/dE = sum_i b_i / 2^(i+1), bit k is read
// from the circuit H, P(delta_k), controlled-U^(2^k), H on the ancilla, where
//
//   delta_k = E' t 2^k - 2 pi sum_{i>k} b_i / 2^(i+1-k)
//
// and bits run from k = N_bits-1 down to 0. The controlled powers are applied
// through the spectral decomposition of the one-cycle evolution operator, so
// U^(2^k) costs the same for every k.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/compiler.hpp"
#include "atomq/error.hpp"
#include "atomq/exact.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/state_vector.hpp"

namespace atomq {

enum class MeasurementMode { argmax, sampled };

inline std::string to_string(MeasurementMode m) { return m == MeasurementMode::argmax ? "argmax" : "sampled"; }

inline constexpr std::size_t kIpeaMaxQubits = 12;

struct IpeaConfig {
  double delta_e = 3.0 * std::numbers::pi;
  double e_prime = 0.0;
  std::size_t n_bits = 10;
  std::size_t n_t = 1;
  bool exact_evolution = false;  // dense exp(-iHt) instead of the Trotter circuit
  CompileStrategy strategy = CompileStrategy::three_step;
  MeasurementMode measurement = MeasurementMode::argmax;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  bool project = true;  // false: every bit starts again from the initial state

  double time() const { return 2.0 * std::numbers::pi / delta_e; }

  void validate() const {
    if (!(delta_e > 0) || !std::isfinite(delta_e)) throw ConfigError("ipea delta_e must be positive");
    if (!std::isfinite(e_prime)) throw ConfigError("ipea e_prime must be finite");
    if (n_bits < 1 || n_bits > 52) throw ConfigError("ipea n_bits must be in [1, 52]");
    if (n_t < 1) throw ConfigError("ipea n_t must be positive");
    if (measurement == MeasurementMode::sampled && shots < 1) throw ConfigError("sampled measurement needs shots >= 1");
  }
};

struct BitRecord {
  std::size_t k = 0;
  int bit = 0;
  double p1 = 0.0;     // ancilla P(1) before the measurement
  double delta = 0.0;  // delta_k as given by the feedback formula (not reduced mod 2 pi)
};

struct IpeaResult {
  double energy = 0.0;
  std::vector<BitRecord> bits;  // measurement order, k = N_bits-1 ... 0
  std::size_t controlled_steps = 0;   // controlled Trotter steps (or exact cycles) applied
  std::size_t blocks_per_step = 0;    // commuting-group blocks in one Trotter step
  std::size_t controlled_blocks = 0;  // controlled_steps * blocks_per_step
};

/// One first-order Trotter step prod_n exp(-i gamma_n P_n tau), one compiled block per commuting group.
inline std::vector<Circuit> trotter_step_blocks(const QubitHamiltonian& ham, double tau, CompileStrategy strategy) {
  ham.require_hermitian();
  std::vector<Circuit> blocks;
  for (const auto& group : partition_commuting(ham)) {
    ExponentialGroup g(ham.n_qubits());
    for (const auto& t : group) g.terms.push_back({t.string, 2.0 * t.coeff.real() * tau});
    blocks.push_back(compile_group(g, strategy));
  }
  return blocks;
}

/// (prod_n exp(-i gamma_n P_n tau))^N_t with tau = t / N_t.
inline Circuit trotterized_evolution(const QubitHamiltonian& ham, double t, std::size_t n_t,
                                     CompileStrategy strategy = CompileStrategy::three_step) {
  if (n_t < 1) throw ConfigError("Trotter number must be positive");
  Circuit step(ham.n_qubits());
  for (const auto& b : trotter_step_blocks(ham, t / static_cast<double>(n_t), strategy)) step.append(b);
  Circuit out(ham.n_qubits());
  for (std::size_t i = 0; i < n_t; ++i) out.append(step);
  return out;
}

/// U = Q diag(exp(2 pi i turns)) Q^dagger with unitary Q.
struct EvolutionSpectrum {
  Eigen::MatrixXcd basis;
  std::vector<double> turns;

  std::size_t n_qubits() const {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < static_cast<std::size_t>(basis.rows())) ++n;
    return n;
  }

  /// Eigenphases of U^(2^k) in turns, reduced to [0, 1).
  double power_turn(std::size_t n, std::size_t k) const {
    const double x = std::ldexp(turns[n], static_cast<int>(k));
    return x - std::floor(x);
  }

  StateVector apply_power(const StateVector& s, std::size_t k) const {
    Eigen::VectorXcd c = basis.adjoint() * to_eigen(s);
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) *= std::polar(1.0, 2.0 * std::numbers::pi * power_turn(static_cast<std::size_t>(i), k));
    return from_eigen(s.n_qubits(), basis * c);
  }
};

/// exp(-i H t) with t = 2 pi / dE, from the dense eigendecomposition of H.
inline EvolutionSpectrum exact_evolution_spectrum(const QubitHamiltonian& ham, double delta_e) {
  ham.require_hermitian();
  if (ham.n_qubits() > kIpeaMaxQubits)
    throw ValidationError("iPEA simulation limited to " + std::to_string(kIpeaMaxQubits) + " qubits");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(ham));
  EvolutionSpectrum out{es.eigenvectors(), {}};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.turns.push_back(-es.eigenvalues()(i) / delta_e);
  return out;
}

/// Spectrum of a circuit unitary via its Schur form, which is diagonal for a unitary.
inline EvolutionSpectrum circuit_spectrum(const Circuit& c) {
  if (c.n_qubits > kIpeaMaxQubits)
    throw ValidationError("iPEA simulation limited to " + std::to_string(kIpeaMaxQubits) + " qubits");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(circuit_unitary(c));
  const Eigen::MatrixXcd& t = schur.matrixT();
  const double off = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff();
  if (t.rows() > 1 && off > 1e-8) throw NumericalError("evolution circuit is not unitary (Schur form not diagonal)");
  EvolutionSpectrum out{schur.matrixU(), {}};
  for (Eigen::Index i = 0; i < t.rows(); ++i) out.turns.push_back(std::arg(t(i, i)) / (2.0 * std::numbers::pi));
  return out;
}

/// delta_k in turns, reduced mod 1, and the unreduced value in radians.
inline std::pair<double, double> feedback_phase(const IpeaConfig& cfg, std::size_t k,
                                                const std::vector<int>& bits_by_index) {
  double tail = 0.0;
  for (std::size_t i = k + 1; i < cfg.n_bits; ++i)
    if (bits_by_index[i]) tail += std::ldexp(1.0, -static_cast<int>(i + 1 - k));
  const double lead = std::ldexp(cfg.e_prime / cfg.delta_e, static_cast<int>(k));
  const double reduced = (lead - std::floor(lead)) - tail;
  const double raw = cfg.e_prime * cfg.time() * std::ldexp(1.0, static_cast<int>(k)) - 2.0 * std::numbers::pi * tail;
  return {reduced, raw};
}

/// Ancilla outcome from P(1): argmax (ties read 0) or the majority of sampled shots (ties read 0).
inline int decide_bit(double p1, const IpeaConfig& cfg, std::mt19937_64& rng) {
  if (cfg.measurement == MeasurementMode::argmax) return p1 > 0.5 ? 1 : 0;
  std::binomial_distribution<std::size_t> shots(cfg.shots, std::clamp(p1, 0.0, 1.0));
  return 2 * shots(rng) > cfg.shots ? 1 : 0;
}

/// Circuit for bit k on n+1 qubits (ancilla = qubit n), controlled block repeated 2^k times.
inline Circuit ipea_bit_circuit(const Circuit& evolution, std::size_t k, double delta) {
  const Circuit ctrl = make_controlled(evolution);
  const int anc = static_cast<int>(evolution.n_qubits);
  Circuit c(evolution.n_qubits + 1);
  c.add(Gate::h(anc)).add(Gate::phase(anc, delta));
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) c.append(ctrl);
  c.add(Gate::h(anc));
  return c;
}

/// One bit: returns the record and the normalized system state for the observed outcome.
inline std::pair<BitRecord, StateVector> ipea_bit(const StateVector& psi, std::size_t k, double delta_turns,
                                                  const EvolutionSpectrum& u, const IpeaConfig& cfg,
                                                  std::mt19937_64& rng) {
  // ancilla |0>: (psi + e^{i delta} U psi) / 2, ancilla |1>: (psi - e^{i delta} U psi) / 2
  const StateVector upsi = u.apply_power(psi, k);
  const Complex ph = std::polar(1.0, 2.0 * std::numbers::pi * delta_turns);
  StateVector zero(psi.n_qubits()), one(psi.n_qubits());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    zero[i] = 0.5 * (psi[i] + ph * upsi[i]);
    one[i] = 0.5 * (psi[i] - ph * upsi[i]);
  }
  const double p0 = zero.norm_squared(), p1 = one.norm_squared();
  if (!(p0 + p1 > 1e-300)) throw NumericalError("iPEA input state has zero norm");
  BitRecord rec;
  rec.k = k;
  rec.p1 = p1 / (p0 + p1);
  rec.bit = decide_bit(rec.p1, cfg, rng);
  StateVector& post = rec.bit ? one : zero;
  if (!(post.norm_squared() > 1e-300)) throw NumericalError("projection onto a zero-probability ancilla outcome");
  post.normalize();
  return {rec, std::move(post)};
}

inline double energy_from_bits(const IpeaConfig& cfg, const std::vector<int>& bits_by_index) {
  double x = 0.0;
  for (std::size_t i = 0; i < bits_by_index.size(); ++i)
    if (bits_by_index[i]) x += std::ldexp(1.0, -static_cast<int>(i + 1));
  return cfg.e_prime - cfg.delta_e * x;
}

inline IpeaResult run_ipea(const QubitHamiltonian& ham, const IpeaConfig& cfg, const StateVector& initial) {
  cfg.validate();
  ham.require_hermitian();
  if (initial.n_qubits() != ham.n_qubits()) throw ValidationError("initial state and Hamiltonian qubit counts differ");
  if (std::abs(initial.norm_squared() - 1.0) > 1e-10) throw ValidationError("initial state is not normalized");

  IpeaResult r;
  EvolutionSpectrum u;
  if (cfg.exact_evolution) {
    u = exact_evolution_spectrum(ham, cfg.delta_e);
    r.blocks_per_step = 1;
  } else {
    u = circuit_spectrum(trotterized_evolution(ham, cfg.time(), cfg.n_t, cfg.strategy));
    r.blocks_per_step = partition_commuting(ham).size();
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> bits(cfg.n_bits, 0);
  StateVector psi = initial;
  for (std::size_t j = 0; j < cfg.n_bits; ++j) {
    const std::size_t k = cfg.n_bits - 1 - j;
    const auto [turns, raw] = feedback_phase(cfg, k, bits);
    auto [rec, post] = ipea_bit(cfg.project ? psi : initial, k, turns, u, cfg, rng);
    rec.delta = raw;
    bits[k] = rec.bit;
    if (cfg.project) psi = std::move(post);
    r.bits.push_back(rec);
  }
  const std::size_t cycles = (std::size_t{1} << cfg.n_bits) - 1;
  r.controlled_steps = cycles * (cfg.exact_evolution ? 1 : cfg.n_t);
  r.controlled_blocks = r.controlled_steps * r.blocks_per_step;
  r.energy = energy_from_bits(cfg, bits);
  return r;
}

}  // namespace atomq
