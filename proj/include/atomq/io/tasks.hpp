// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Task drivers. Each task renders its result files in memory, so a run can be
// checked byte-for-byte before anything touches the disk.

#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "atomq/ansatz.hpp"
#include "atomq/circuit.hpp"
#include "atomq/compiler.hpp"
#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/io/config.hpp"
#include "atomq/ipea.hpp"
#include "atomq/problem.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/vqe.hpp"

namespace atomq::io {

using Json = nlohmann::ordered_json;

/// file name -> contents
using TaskOutput = std::map<std::string, std::string>;

inline constexpr const char* kThreadsEnv = "ATOMQ_THREADS";

/// Explicit value, else $ATOMQ_THREADS, else the hardware concurrency.
inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kThreadsEnv); env && *env) {
    const std::uint64_t v = detail::parse_uint(kThreadsEnv, env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline Json header(const RunConfig& c) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["task"] = to_string(c.task);
  j["config"] = effective_config(c);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + '\n'; }

/// Qubit n-1 first, as in Pauli strings.
inline std::string bit_string(Mask bits, std::size_t n) {
  std::string s;
  for (std::size_t q = n; q-- > 0;) s += (bits >> q) & 1 ? '1' : '0';
  return s;
}

inline Json counts_json(const GateCounts& g) {
  Json j;
  j["single_qubit"] = g.single_qubit;
  j["cnot"] = g.cnot;
  j["other_two_qubit"] = g.other_two_qubit;
  j["total"] = g.total();
  return j;
}

inline std::string circuit_text(const Circuit& c) {
  std::ostringstream out;
  write_circuit(out, c);
  return out.str();
}

inline ParametricCircuit ansatz_program(const RunConfig& c, const QubitProblem& p, HeAnsatz* he_out = nullptr) {
  if (c.ansatz == AnsatzKind::ducc_sd) return DuccAnsatz(p).program(c.ducc_strategy);
  HeAnsatz he = c.he;
  he.n_qubits = p.n_qubits();
  if (he_out) *he_out = he;
  return he.program();
}

inline double sector_fci(const QubitProblem& p) { return sector_ground_state(p).energy; }

inline TaskOutput run_map(const RunConfig& c, const AtomicSystem& sys, const QubitProblem& p) {
  Json j = header(c);
  j["n_orbitals"] = sys.basis.size();
  j["n_electrons"] = sys.reference.n_electrons();
  j["two_m"] = sys.reference.total_two_m();
  j["parity"] = sys.reference.total_parity() ? "odd" : "even";
  j["max_asymmetry"] = sys.max_asymmetry;
  j["permutation"] = p.system.permutation;
  j["tapered"] = p.encoding.tapered;
  j["parity_qubit"] = p.system.parity_qubit ? Json(*p.system.parity_qubit) : Json(nullptr);
  j["n_qubits"] = p.n_qubits();
  j["n_terms"] = p.hamiltonian.size();
  j["n_commuting_groups"] = partition_commuting(p.hamiltonian).size();
  j["reference_bits"] = bit_string(p.reference_bits, p.n_qubits());
  j["reference_energy"] = p.reference_energy;
  std::ostringstream h;
  write_qubit_hamiltonian(h, p.hamiltonian);
  return {{"result.json", dump(j)}, {"hamiltonian.txt", h.str()}};
}

inline TaskOutput run_fci(const RunConfig& c, const QubitProblem& p) {
  const double e = sector_fci(p);
  Json j = header(c);
  j["n_qubits"] = p.n_qubits();
  j["reference_energy"] = p.reference_energy;
  j["e_fci"] = e;
  j["correlation_energy"] = e - p.reference_energy;
  return {{"result.json", dump(j)}};
}

inline TaskOutput run_vqe_task(const RunConfig& c, const QubitProblem& p, std::size_t threads) {
  const double e_fci = sector_fci(p);
  VqeOptions opt = c.vqe;
  if (c.check_bound) opt.lower_bound = e_fci;

  HeAnsatz he;
  const ParametricCircuit program = ansatz_program(c, p, &he);
  CampaignResult campaign;
  if (c.ansatz == AnsatzKind::ducc_sd) {
    campaign.runs.push_back(run_vqe(p.hamiltonian, program, std::vector<double>(program.n_params, 0.0), opt, c.seed));
    campaign.best = 0;
  } else {
    campaign = run_he_campaign(p.hamiltonian, he, opt, c.seed, threads);
  }
  const VqeRunResult& best = campaign.best_run();

  Json j = header(c);
  j["n_qubits"] = p.n_qubits();
  j["n_params"] = program.n_params;
  j["reference_energy"] = p.reference_energy;
  j["e_fci"] = e_fci;
  j["energy"] = best.energy;
  j["error"] = best.energy - e_fci;
  j["best_run"] = best.run_id;
  const Circuit circuit = program.bind(best.theta);
  j["gate_counts"] = counts_json(gate_counts(circuit));
  Json runs = Json::array();
  for (const auto& r : campaign.runs) {
    Json e;
    e["run_id"] = r.run_id;
    e["seed"] = r.seed;
    if (!r.ok()) {
      e["error"] = r.error;
    } else {
      e["energy"] = r.energy;
      e["iterations"] = r.iterations;
      e["converged"] = r.converged;
      e["initial_theta"] = r.initial_theta;
      e["theta"] = r.theta;
    }
    runs.push_back(std::move(e));
  }
  j["runs"] = std::move(runs);

  std::string csv = "run_id,iteration,energy,grad_norm\n";
  for (const auto& r : campaign.runs)
    for (const auto& t : r.trajectory)
      csv += std::to_string(r.run_id) + ',' + std::to_string(t.iteration) + ',' +
             ::atomq::detail::format_double(t.energy) + ',' + ::atomq::detail::format_double(t.grad_norm) + '\n';
  return {{"result.json", dump(j)}, {"trajectory.csv", csv}, {"circuit.txt", circuit_text(circuit)}};
}

inline TaskOutput run_ipea_task(RunConfig c, const QubitProblem& p) {
  IpeaConfig cfg = c.ipea;
  cfg.e_prime = c.eprime.value_or(p.reference_energy);
  cfg.seed = c.seed;
  c.eprime = cfg.e_prime;  // echo the resolved window
  const IpeaResult r = run_ipea(p.hamiltonian, cfg, p.reference_state());

  Json j = header(c);
  j["n_qubits"] = p.n_qubits();
  j["reference_energy"] = p.reference_energy;
  if (p.n_qubits() <= kIpeaMaxQubits) {
    const double e_fci = sector_fci(p);
    j["e_fci"] = e_fci;
    j["error"] = r.energy - e_fci;
  }
  j["energy"] = r.energy;
  j["e_prime"] = cfg.e_prime;
  j["delta_e"] = cfg.delta_e;
  j["time"] = cfg.time();
  Json bits = Json::array();
  for (const auto& b : r.bits) {
    Json e;
    e["k"] = b.k;
    e["bit"] = b.bit;
    e["p1"] = b.p1;
    e["delta"] = b.delta;
    bits.push_back(std::move(e));
  }
  j["bits"] = std::move(bits);
  j["controlled_steps"] = r.controlled_steps;
  j["blocks_per_step"] = r.blocks_per_step;
  j["controlled_blocks"] = r.controlled_blocks;
  if (!cfg.exact_evolution) {
    Circuit one(p.n_qubits());
    for (const auto& b : trotter_step_blocks(p.hamiltonian, cfg.time() / static_cast<double>(cfg.n_t), cfg.strategy))
      one.append(b);
    j["trotter_step_gate_counts"] = counts_json(gate_counts(one));
    j["controlled_step_gate_counts"] = counts_json(gate_counts(make_controlled(one)));
  } else {
    j["controlled_step_gate_counts"] = nullptr;
  }
  return {{"result.json", dump(j)}};
}

inline TaskOutput run_compile(const RunConfig& c, const QubitProblem& p) {
  Circuit circuit;
  switch (c.compile_target) {
    case CompileTarget::ansatz: {
      const auto program = ansatz_program(c, p);
      circuit = program.bind(std::vector<double>(program.n_params, 1.0));
      break;
    }
    case CompileTarget::trotter_step: circuit = trotterized_evolution(p.hamiltonian, 1.0, 1, c.ipea.strategy); break;
    case CompileTarget::controlled_trotter_step:
      circuit = make_controlled(trotterized_evolution(p.hamiltonian, 1.0, 1, c.ipea.strategy));
      break;
  }
  const GateCounts g = gate_counts(circuit);
  Json j = header(c);
  j["n_qubits"] = circuit.n_qubits;
  j["single_qubit"] = g.single_qubit;
  j["cnot"] = g.cnot;
  j["other_two_qubit"] = g.other_two_qubit;
  j["total"] = g.total();
  return {{"circuit.txt", circuit_text(circuit)}, {"gate_counts.json", dump(j)}};
}

}  // namespace detail

/// Runs a validated config and returns the rendered result files.
inline TaskOutput run_task(const RunConfig& c, std::size_t threads = 1) {
  validate(c);
  const AtomicSystem sys = load_integrals(c.integrals);
  const QubitProblem p = build_problem(sys, c.taper);
  TaskOutput out;
  switch (c.task) {
    case Task::map: out = detail::run_map(c, sys, p); break;
    case Task::fci: out = detail::run_fci(c, p); break;
    case Task::vqe: out = detail::run_vqe_task(c, p, threads); break;
    case Task::ipea: out = detail::run_ipea_task(c, p); break;
    case Task::compile: out = detail::run_compile(c, p); break;
  }
  RunConfig echo = c;
  if (c.task == Task::ipea && !echo.eprime) echo.eprime = p.reference_energy;
  out["effective_config.txt"] = effective_config_text(echo);
  return out;
}

inline void write_outputs(const TaskOutput& files, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& [name, text] : files) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
  }
}

}  // namespace atomq::io
