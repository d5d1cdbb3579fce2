// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Everything except the config and result-file layer (atomq/io.hpp), which
// needs nlohmann_json.

#pragma once

#include "atomq/ansatz.hpp"
#include "atomq/circuit.hpp"
#include "atomq/compiler.hpp"
#include "atomq/error.hpp"
#include "atomq/exact.hpp"
#include "atomq/fermion_hamiltonian.hpp"
#include "atomq/ipea.hpp"
#include "atomq/optimize.hpp"
#include "atomq/parity_mapping.hpp"
#include "atomq/pauli.hpp"
#include "atomq/problem.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "atomq/simulator.hpp"
#include "atomq/state_vector.hpp"
#include "atomq/vqe.hpp"
