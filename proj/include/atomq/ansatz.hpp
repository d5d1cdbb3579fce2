// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "atomq/ansatz/ducc.hpp"
#include "atomq/ansatz/hardware_efficient.hpp"
#include "atomq/ansatz/parametric.hpp"
