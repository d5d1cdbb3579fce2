// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Run configuration: `key = value` lines, '#' comments, dotted keys per option block.

#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "atomq/ansatz.hpp"
#include "atomq/compiler.hpp"
#include "atomq/error.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/ipea.hpp"
#include "atomq/vqe.hpp"

namespace atomq::io {

enum class Task { map, fci, vqe, ipea, compile };
enum class AnsatzKind { ducc_sd, he };
enum class CompileTarget { ansatz, trotter_step, controlled_trotter_step };

inline constexpr int kFormatVersion = 1;

struct RunConfig {
  Task task = Task::map;
  std::string integrals;
  std::string output = "atomq_out";
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: ATOMQ_THREADS or the hardware concurrency
  bool taper = true;

  AnsatzKind ansatz = AnsatzKind::ducc_sd;
  HeAnsatz he;  // n_qubits filled from the problem
  CompileStrategy ducc_strategy = CompileStrategy::three_step;

  VqeOptions vqe;
  bool check_bound = true;

  IpeaConfig ipea;
  std::optional<double> eprime;  // default: reference energy

  CompileTarget compile_target = CompileTarget::ansatz;

  std::set<std::string> explicit_keys;
};

namespace detail {

template <class E>
struct EnumNames {
  std::vector<std::pair<std::string, E>> entries;

  std::string valid() const {
    std::string s;
    for (const auto& [n, v] : entries) s += (s.empty() ? "" : ", ") + n;
    return s;
  }
  E parse(const std::string& key, const std::string& text) const {
    for (const auto& [n, v] : entries)
      if (n == text) return v;
    throw ConfigError("unknown value '" + text + "' for '" + key + "' (valid: " + valid() + ")");
  }
  std::string name(E v) const {
    for (const auto& [n, e] : entries)
      if (e == v) return n;
    return "?";
  }
};

inline const EnumNames<Task> kTasks{{{"map", Task::map}, {"fci", Task::fci}, {"vqe", Task::vqe},
                                     {"ipea", Task::ipea}, {"compile", Task::compile}}};
inline const EnumNames<AnsatzKind> kAnsatze{{{"ducc-sd", AnsatzKind::ducc_sd}, {"he", AnsatzKind::he}}};
inline const EnumNames<CompileStrategy> kStrategies{
    {{"greedy", CompileStrategy::greedy}, {"three-step", CompileStrategy::three_step}}};
inline const EnumNames<HeLayout> kLayouts{{{"merged", HeLayout::merged}, {"splitted", HeLayout::splitted}}};
inline const EnumNames<HeRotation> kRotations{{{"zx", HeRotation::zx}, {"zyz", HeRotation::zyz}}};
inline const EnumNames<OptimizerKind> kOptimizers{{{"adam", OptimizerKind::adam}, {"qng", OptimizerKind::qng}}};
inline const EnumNames<MeasurementMode> kMeasurements{
    {{"argmax", MeasurementMode::argmax}, {"sampled", MeasurementMode::sampled}}};
inline const EnumNames<CompileTarget> kTargets{{{"ansatz", CompileTarget::ansatz},
                                                {"trotter-step", CompileTarget::trotter_step},
                                                {"controlled-trotter-step", CompileTarget::controlled_trotter_step}}};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size() || text.empty())
    throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + text + "'");
  return v;
}

inline double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v))
    throw ConfigError("key '" + key + "' expects a finite number, got '" + text + "'");
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + text + "'");
}

using Json = nlohmann::ordered_json;

enum Block : unsigned { general = 1, ansatz = 2, optimizer = 4, ipea_block = 8, compile_block = 16 };

inline unsigned blocks_for(Task t) {
  switch (t) {
    case Task::map:
    case Task::fci: return general;
    case Task::vqe: return general | ansatz | optimizer;
    case Task::ipea: return general | ipea_block | compile_block;
    case Task::compile: return general | ansatz | compile_block;
  }
  return general;
}

struct Option {
  std::string key;
  unsigned block;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<Json(const RunConfig&)> get;
  std::function<bool(const RunConfig&)> applies = [](const RunConfig&) { return true; };
};

template <class E>
Option enum_option(std::string key, unsigned block, const EnumNames<E>& names, E RunConfig::*field) {
  return {key, block, [&names, field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = names.parse(k, v); },
          [&names, field](const RunConfig& c) { return Json(names.name(c.*field)); }};
}

inline const std::vector<Option>& options() {
  using C = RunConfig;
  static const std::vector<Option> opts = [] {
    auto is_he = [](const C& c) { return c.ansatz == AnsatzKind::he; };
    auto is_ducc = [](const C& c) { return c.ansatz == AnsatzKind::ducc_sd; };
    auto is_adam = [](const C& c) { return c.vqe.optimizer == OptimizerKind::adam; };
    auto is_qng = [](const C& c) { return c.vqe.optimizer == OptimizerKind::qng; };
    auto is_sampled = [](const C& c) { return c.ipea.measurement == MeasurementMode::sampled; };
    auto trotter = [](const C& c) { return c.task != Task::ipea || !c.ipea.exact_evolution; };
    std::vector<Option> o;
    o.push_back(enum_option("task", general, kTasks, &C::task));
    o.push_back({"integrals", general, [](C& c, const std::string&, const std::string& v) { c.integrals = v; },
                 [](const C& c) { return Json(c.integrals); }});
    o.push_back({"output", general, [](C& c, const std::string&, const std::string& v) { c.output = v; },
                 [](const C& c) { return Json(c.output); }});
    o.push_back({"seed", general, [](C& c, const std::string& k, const std::string& v) { c.seed = parse_uint(k, v); },
                 [](const C& c) { return Json(c.seed); }});
    o.push_back({"threads", general,
                 [](C& c, const std::string& k, const std::string& v) { c.threads = parse_uint(k, v); },
                 [](const C& c) { return Json(c.threads); }});
    o.push_back({"taper", general, [](C& c, const std::string& k, const std::string& v) { c.taper = parse_bool(k, v); },
                 [](const C& c) { return Json(c.taper); }});

    o.push_back(enum_option("ansatz", ansatz, kAnsatze, &C::ansatz));
    o.push_back({"he.layers", ansatz,
                 [](C& c, const std::string& k, const std::string& v) { c.he.layers = parse_uint(k, v); },
                 [](const C& c) { return Json(c.he.layers); }, is_he});
    o.push_back({"he.layout", ansatz,
                 [](C& c, const std::string& k, const std::string& v) { c.he.layout = kLayouts.parse(k, v); },
                 [](const C& c) { return Json(kLayouts.name(c.he.layout)); }, is_he});
    o.push_back({"he.rotation", ansatz,
                 [](C& c, const std::string& k, const std::string& v) { c.he.rotation = kRotations.parse(k, v); },
                 [](const C& c) { return Json(kRotations.name(c.he.rotation)); }, is_he});
    o.push_back({"ducc.strategy", ansatz,
                 [](C& c, const std::string& k, const std::string& v) { c.ducc_strategy = kStrategies.parse(k, v); },
                 [](const C& c) { return Json(kStrategies.name(c.ducc_strategy)); }, is_ducc});

    o.push_back({"optimizer", optimizer,
                 [](C& c, const std::string& k, const std::string& v) { c.vqe.optimizer = kOptimizers.parse(k, v); },
                 [](const C& c) { return Json(kOptimizers.name(c.vqe.optimizer)); }});
    auto real = [](std::string key, unsigned block, auto ref, auto applies) {
      return Option{key, block, [ref](C& c, const std::string& k, const std::string& v) { ref(c) = parse_real(k, v); },
                    [ref](const C& c) { return Json(ref(c)); }, applies};
    };
    auto always = [](const C&) { return true; };
    o.push_back(real("adam.eta", optimizer, [](auto& c) -> auto& { return c.vqe.adam.eta; }, is_adam));
    o.push_back(real("adam.epsilon", optimizer, [](auto& c) -> auto& { return c.vqe.adam.epsilon; }, is_adam));
    o.push_back(real("adam.beta1", optimizer, [](auto& c) -> auto& { return c.vqe.adam.beta1; }, is_adam));
    o.push_back(real("adam.beta2", optimizer, [](auto& c) -> auto& { return c.vqe.adam.beta2; }, is_adam));
    o.push_back(real("qng.eta", optimizer, [](auto& c) -> auto& { return c.vqe.qng.eta; }, is_qng));
    o.push_back({"qng.lambda_grid", optimizer,
                 [](C& c, const std::string& k, const std::string& v) {
                   std::vector<std::string> parts;
                   std::stringstream ss(v);
                   for (std::string p; std::getline(ss, p, ',');) parts.push_back(trim(p));
                   if (parts.size() != 3) throw ConfigError("key '" + k + "' expects 'min, max, points'");
                   c.vqe.qng.lambda_min = parse_real(k, parts[0]);
                   c.vqe.qng.lambda_max = parse_real(k, parts[1]);
                   c.vqe.qng.lambda_points = parse_uint(k, parts[2]);
                 },
                 [](const C& c) {
                   return Json(::atomq::detail::format_double(c.vqe.qng.lambda_min) + ", " +
                               ::atomq::detail::format_double(c.vqe.qng.lambda_max) + ", " +
                               std::to_string(c.vqe.qng.lambda_points));
                 },
                 is_qng});
    o.push_back({"max_iters", optimizer,
                 [](C& c, const std::string& k, const std::string& v) { c.vqe.max_iters = parse_uint(k, v); },
                 [](const C& c) { return Json(c.vqe.max_iters); }});
    o.push_back(real("tol_e", optimizer, [](auto& c) -> auto& { return c.vqe.tol_e; }, always));
    o.push_back({"patience", optimizer,
                 [](C& c, const std::string& k, const std::string& v) { c.vqe.patience = parse_uint(k, v); },
                 [](const C& c) { return Json(c.vqe.patience); }});
    o.push_back({"vqe.check_bound", optimizer,
                 [](C& c, const std::string& k, const std::string& v) { c.check_bound = parse_bool(k, v); },
                 [](const C& c) { return Json(c.check_bound); }});

    o.push_back({"ipea.nbits", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.n_bits = parse_uint(k, v); },
                 [](const C& c) { return Json(c.ipea.n_bits); }});
    o.push_back({"ipea.nt", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.n_t = parse_uint(k, v); },
                 [](const C& c) { return Json(c.ipea.n_t); }, trotter});
    o.push_back(real("ipea.delta_e", ipea_block, [](auto& c) -> auto& { return c.ipea.delta_e; }, always));
    o.push_back({"ipea.eprime", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.eprime = parse_real(k, v); },
                 [](const C& c) { return c.eprime ? Json(*c.eprime) : Json("reference"); }});
    o.push_back({"ipea.exact_evolution", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.exact_evolution = parse_bool(k, v); },
                 [](const C& c) { return Json(c.ipea.exact_evolution); }});
    o.push_back({"ipea.measurement", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.measurement = kMeasurements.parse(k, v); },
                 [](const C& c) { return Json(kMeasurements.name(c.ipea.measurement)); }});
    o.push_back({"ipea.shots", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.shots = parse_uint(k, v); },
                 [](const C& c) { return Json(c.ipea.shots); }, is_sampled});
    o.push_back({"ipea.project", ipea_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.project = parse_bool(k, v); },
                 [](const C& c) { return Json(c.ipea.project); }});

    o.push_back({"compile.strategy", compile_block,
                 [](C& c, const std::string& k, const std::string& v) { c.ipea.strategy = kStrategies.parse(k, v); },
                 [](const C& c) { return Json(kStrategies.name(c.ipea.strategy)); },
                 [](const C& c) {
                   return c.task == Task::ipea ? !c.ipea.exact_evolution : c.compile_target != CompileTarget::ansatz;
                 }});
    o.push_back({"compile.target", compile_block,
                 [](C& c, const std::string& k, const std::string& v) { c.compile_target = kTargets.parse(k, v); },
                 [](const C& c) { return Json(kTargets.name(c.compile_target)); },
                 [](const C& c) { return c.task == Task::compile; }});
    return o;
  }();
  return opts;
}

inline const Option* find_option(const std::string& key) {
  for (const auto& o : options())
    if (o.key == key) return &o;
  return nullptr;
}

}  // namespace detail

inline std::string to_string(Task t) { return detail::kTasks.name(t); }
inline std::string to_string(AnsatzKind a) { return detail::kAnsatze.name(a); }
inline Task parse_task(const std::string& s) { return detail::kTasks.parse("task", s); }

/// Sets one key from its text value; repeated keys are an error.
inline void set_option(RunConfig& c, const std::string& key, const std::string& value) {
  const auto* o = detail::find_option(key);
  if (!o) throw ConfigError("unknown key '" + key + "'");
  if (!c.explicit_keys.insert(key).second) throw ConfigError("key '" + key + "' given more than once");
  o->set(c, key, value);
}

/// Like set_option, but replaces an earlier value (command-line overrides).
inline void override_option(RunConfig& c, const std::string& key, const std::string& value) {
  c.explicit_keys.erase(key);
  set_option(c, key, value);
}

/// Reads `key = value` pairs; relative integrals paths resolve against base_dir.
inline void read_config(RunConfig& c, std::istream& in, const std::filesystem::path& base_dir = {}) {
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    const std::string body = detail::trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(no) + ": expected 'key = value'");
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    try {
      set_option(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(no) + ": " + e.what());
    }
  }
  if (!c.integrals.empty() && std::filesystem::path(c.integrals).is_relative())
    c.integrals = std::filesystem::absolute(base_dir / c.integrals).lexically_normal().string();
}

inline void read_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  read_config(c, in, std::filesystem::path(path).parent_path());
}

/// Checks the finished config against its task.
inline void validate(const RunConfig& c) {
  const unsigned allowed = detail::blocks_for(c.task);
  for (const auto& key : c.explicit_keys) {
    const auto* o = detail::find_option(key);
    if (!(o->block & allowed)) throw ConfigError("key '" + key + "' does not apply to task '" + to_string(c.task) + "'");
    if (!o->applies(c)) throw ConfigError("key '" + key + "' conflicts with the other options of this config");
  }
  if (c.integrals.empty()) throw ConfigError("no integrals file given");
  if (!std::filesystem::is_regular_file(c.integrals)) throw ConfigError("integrals file '" + c.integrals + "' not found");
  if (c.output.empty()) throw ConfigError("output directory must not be empty");
  if (allowed & detail::ansatz) {
    if (c.ansatz == AnsatzKind::he && c.he.layers < 1) throw ConfigError("he.layers must be positive");
  }
  if (allowed & detail::optimizer) {
    if (c.vqe.max_iters < 1) throw ConfigError("max_iters must be positive");
    if (!(c.vqe.tol_e >= 0)) throw ConfigError("tol_e must be non-negative");
    if (!(c.vqe.adam.eta > 0) || !(c.vqe.qng.eta > 0)) throw ConfigError("learning rates must be positive");
    if (!(c.vqe.adam.beta1 >= 0 && c.vqe.adam.beta1 < 1 && c.vqe.adam.beta2 >= 0 && c.vqe.adam.beta2 < 1))
      throw ConfigError("adam.beta1 and adam.beta2 must lie in [0, 1)");
    c.vqe.qng.lambda_grid();
  }
  if (allowed & detail::ipea_block) c.ipea.validate();
}

/// Every option relevant to the task, defaults included, in declaration order.
/// `output` and `threads` do not change results and are left out.
inline nlohmann::ordered_json effective_config(const RunConfig& c) {
  const unsigned allowed = detail::blocks_for(c.task);
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& o : detail::options())
    if ((o.block & allowed) && o.applies(c) && o.key != "output" && o.key != "threads") j[o.key] = o.get(c);
  return j;
}

/// The effective config in the input syntax.
inline std::string effective_config_text(const RunConfig& c) {
  std::string out;
  const auto j = effective_config(c);
  for (const auto& [k, v] : j.items())
    out += k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + '\n';
  return out;
}

}  // namespace atomq::io
