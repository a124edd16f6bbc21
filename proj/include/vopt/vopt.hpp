// Copyright 2026 The vopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vopt/cone.hpp"
#include "vopt/feasible_set.hpp"
#include "vopt/linesearch.hpp"
#include "vopt/problem.hpp"
#include "vopt/problems.hpp"
#include "vopt/scalarization.hpp"
#include "vopt/solver.hpp"
#include "vopt/subproblem.hpp"
#include "vopt/types.hpp"
