// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "polycast/batch.hpp"
#include "polycast/bench.hpp"
#include "polycast/geometry.hpp"
#include "polycast/io.hpp"
