// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// atomq <map|fci|vqe|ipea|compile> [config] [options]
//
// Exit codes: 0 success, 1 usage or config error, 2 numerical or validation failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/io.hpp"

namespace {

struct Flags {
  std::string config;
  std::string integrals;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::vector<std::string> sets;
  // ipea
  std::optional<std::size_t> nbits, nt, shots;
  std::optional<double> delta_e, eprime;
  bool exact_evolution = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("config", f.config, "run config file (key = value lines)");
  sub->add_option("--integrals", f.integrals, "integrals file (overrides the config)");
  sub->add_option("-o,--out", f.out, "output directory (overrides the config)");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--threads", f.threads, "thread cap (default: $ATOMQ_THREADS or all cores)");
  sub->add_option("--set", f.sets, "extra option as key=value (repeatable)");
}

atomq::io::RunConfig build_config(atomq::io::Task task, const Flags& f) {
  using namespace atomq::io;
  RunConfig c;
  if (!f.config.empty()) read_config_file(c, f.config);
  if (c.explicit_keys.count("task") && c.task != task)
    throw atomq::ConfigError("config file is for task '" + to_string(c.task) + "', not '" + to_string(task) + "'");
  c.task = task;
  if (!f.integrals.empty()) override_option(c, "integrals", f.integrals);
  if (!f.out.empty()) override_option(c, "output", f.out);
  if (f.seed) override_option(c, "seed", std::to_string(*f.seed));
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw atomq::ConfigError("--set expects key=value, got '" + kv + "'");
    override_option(c, detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
  }
  auto real = [](double v) { return atomq::detail::format_double(v); };
  if (f.nbits) override_option(c, "ipea.nbits", std::to_string(*f.nbits));
  if (f.nt) override_option(c, "ipea.nt", std::to_string(*f.nt));
  if (f.shots) {
    if (!c.explicit_keys.count("ipea.measurement")) override_option(c, "ipea.measurement", "sampled");
    override_option(c, "ipea.shots", std::to_string(*f.shots));
  }
  if (f.delta_e) override_option(c, "ipea.delta_e", real(*f.delta_e));
  if (f.eprime) override_option(c, "ipea.eprime", real(*f.eprime));
  if (f.exact_evolution) override_option(c, "ipea.exact_evolution", "true");
  return c;
}

void print_summary(atomq::io::Task task, const atomq::io::TaskOutput& files, const std::string& dir) {
  using atomq::io::Task;
  const auto* name = task == Task::compile ? "gate_counts.json" : "result.json";
  const auto j = nlohmann::json::parse(files.at(name));
  switch (task) {
    case Task::map:
      std::printf("map: %zu qubits, %zu Pauli terms\n", j["n_qubits"].get<std::size_t>(), j["n_terms"].get<std::size_t>());
      break;
    case Task::fci: std::printf("fci: E = %.12f\n", j["e_fci"].get<double>()); break;
    case Task::vqe:
      std::printf("vqe: E = %.12f (E_FCI = %.12f)\n", j["energy"].get<double>(), j["e_fci"].get<double>());
      break;
    case Task::ipea: std::printf("ipea: E = %.12f\n", j["energy"].get<double>()); break;
    case Task::compile:
      std::printf("compile: %zu single-qubit, %zu CNOT\n", j["single_qubit"].get<std::size_t>(),
                  j["cnot"].get<std::size_t>());
      break;
  }
  std::printf("results written to %s\n", dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomq: VQE and iterative phase estimation for atomic Hamiltonians"};
  app.require_subcommand(1);
  Flags f;
  std::vector<std::pair<CLI::App*, atomq::io::Task>> subs;
  for (auto task : {atomq::io::Task::map, atomq::io::Task::fci, atomq::io::Task::vqe, atomq::io::Task::ipea,
                    atomq::io::Task::compile}) {
    static const char* help[] = {"map integrals to a (tapered) qubit Hamiltonian", "exact sector ground energy",
                                 "variational quantum eigensolver", "iterative phase estimation",
                                 "compile a circuit and count gates"};
    auto* sub = app.add_subcommand(atomq::io::to_string(task), help[static_cast<int>(task)]);
    add_common(sub, f);
    if (task == atomq::io::Task::ipea) {
      sub->add_option("--nbits", f.nbits, "bits to extract");
      sub->add_option("--nt", f.nt, "Trotter number");
      sub->add_option("--delta-e", f.delta_e, "energy window (a.u.)");
      sub->add_option("--eprime", f.eprime, "upper window endpoint (a.u.)");
      sub->add_flag("--exact-evolution", f.exact_evolution, "exact exp(-iHt) instead of the Trotter circuit");
      sub->add_option("--shots", f.shots, "sampled measurement with this many shots");
    }
    subs.emplace_back(sub, task);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  atomq::io::Task task = atomq::io::Task::map;
  for (const auto& [sub, t] : subs)
    if (sub->parsed()) task = t;

  try {
    const auto cfg = build_config(task, f);
    const auto files = atomq::io::run_task(cfg, atomq::io::resolve_threads(f.threads ? f.threads : cfg.threads));
    atomq::io::write_outputs(files, cfg.output);
    print_summary(task, files, cfg.output);
    return 0;
  } catch (const atomq::ConfigError& e) {
    std::cerr << "atomq: " << e.what() << '\n';
    return 1;
  } catch (const atomq::Error& e) {
    std::cerr << "atomq: " << e.what() << '\n';
    return 2;
  }
}
