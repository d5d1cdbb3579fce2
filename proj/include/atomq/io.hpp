// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "atomq/io/config.hpp"
#include "atomq/io/tasks.hpp"
