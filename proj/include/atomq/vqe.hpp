// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "atomq/ansatz.hpp"
#include "atomq/error.hpp"
#include "atomq/exact.hpp"
#include "atomq/optimize.hpp"
#include "atomq/qubit_hamiltonian.hpp"

namespace atomq {

enum class OptimizerKind { adam, qng };

inline std::string to_string(OptimizerKind k) { return k == OptimizerKind::adam ? "adam" : "qng"; }

struct VqeOptions {
  OptimizerKind optimizer = OptimizerKind::adam;
  AdamOptions adam;
  QngOptions qng;
  std::size_t max_iters = 1000;
  double tol_e = 1e-9;
  std::size_t patience = 10;  // consecutive |dE| < tol_e needed to stop
  std::optional<double> lower_bound;  // E_FCI; every energy must stay above it minus 1e-9
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
};

struct VqeRunResult {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  double energy = 0.0;
  std::vector<double> initial_theta;
  std::vector<double> theta;
  std::vector<TrajectoryPoint> trajectory;
  std::size_t iterations = 0;
  bool converged = false;
  std::string error;  // non-empty when the run failed

  bool ok() const noexcept { return error.empty(); }
};

inline constexpr double kVariationalSlack = 1e-9;

/// Iteration k records E(theta_k) and |grad E(theta_k)|, then updates theta
/// unless the stopping rule fired or k is the last allowed iteration.
inline VqeRunResult run_vqe(const QubitHamiltonian& ham, const ParametricCircuit& program, std::vector<double> theta,
                            const VqeOptions& opt, std::uint64_t seed = 0) {
  if (ham.n_qubits() != program.n_qubits()) throw ValidationError("Hamiltonian and ansatz qubit counts differ");
  if (theta.size() != program.n_params) throw ValidationError("initial parameter count does not match the ansatz");
  if (opt.max_iters == 0) throw ConfigError("max_iters must be positive");
  ham.require_hermitian();

  VqeRunResult r;
  r.seed = seed;
  r.initial_theta = theta;
  AdamState adam(theta.size(), opt.adam);
  QngState qng(opt.qng);
  std::size_t calm = 0;
  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    const auto rep = energy_gradient(program, theta, ham);
    if (!std::isfinite(rep.energy)) throw NumericalError("energy became non-finite");
    if (opt.lower_bound && rep.energy < *opt.lower_bound - kVariationalSlack)
      throw NumericalError("variational bound violated: E = " + std::to_string(rep.energy) +
                           " below E_FCI = " + std::to_string(*opt.lower_bound));
    if (!r.trajectory.empty()) calm = std::abs(rep.energy - r.trajectory.back().energy) < opt.tol_e ? calm + 1 : 0;
    r.trajectory.push_back({it, rep.energy, rep.gradient_norm()});
    r.energy = rep.energy;
    r.theta = theta;
    if (calm >= opt.patience) {
      r.converged = true;
      break;
    }
    if (it + 1 == opt.max_iters) break;
    if (opt.optimizer == OptimizerKind::adam) adam_step(theta, rep.gradient, adam);
    else qng_step(theta, rep.gradient, fubini_study_metric(program, theta), qng);
  }
  r.iterations = r.trajectory.size();
  return r;
}

/// Uniform in [-pi, pi) from the seed.
inline std::vector<double> random_initial_parameters(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> t(n);
  for (auto& x : t) x = -std::numbers::pi + 2.0 * std::numbers::pi * std::generate_canonical<double, 64>(rng);
  return t;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return detail::splitmix64(s);
}

struct CampaignResult {
  std::vector<VqeRunResult> runs;  // sorted by run_id
  std::optional<std::size_t> best;

  const VqeRunResult& best_run() const {
    if (!best) throw NumericalError("every campaign run failed");
    return runs[*best];
  }
};

/// floor(n_params / 2) independent HE runs (at least one) from random starts.
inline std::size_t campaign_size(std::size_t n_params) { return std::max<std::size_t>(1, n_params / 2); }

inline CampaignResult run_he_campaign(const QubitHamiltonian& ham, const HeAnsatz& he, const VqeOptions& opt,
                                      std::uint64_t master_seed, std::size_t threads = 1) {
  const ParametricCircuit program = he.program();
  CampaignResult out;
  out.runs.resize(campaign_size(he.n_params()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.runs.size(); i = next++) {
      const std::uint64_t seed = derive_seed(master_seed, i);
      VqeRunResult r;
      try {
        r = run_vqe(ham, program, random_initial_parameters(he.n_params(), seed), opt, seed);
      } catch (const Error& e) {
        r.seed = seed;
        r.error = e.what();
      }
      r.run_id = i;
      out.runs[i] = std::move(r);
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, out.runs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < out.runs.size(); ++i)
    if (out.runs[i].ok() && (!out.best || out.runs[i].energy < out.runs[*out.best].energy)) out.best = i;
  return out;
}

}  // namespace atomq
