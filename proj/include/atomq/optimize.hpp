// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "atomq/optimize/adam.hpp"
#include "atomq/optimize/gradient.hpp"
#include "atomq/optimize/qng.hpp"
