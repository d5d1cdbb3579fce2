// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "atomq/compiler/compile.hpp"
#include "atomq/compiler/controlled.hpp"
#include "atomq/compiler/linear_map.hpp"
#include "atomq/compiler/tableau.hpp"
