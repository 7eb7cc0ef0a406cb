// Copyright 2026 The qihe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Multi-start derivative-free simplex minimization. Each restart is
// independent and deterministic given its start point, so the OpenMP path
// and the serial reference path return identical results.

#include <functional>
#include <vector>

#include "qihe/operator_core.hpp"

namespace qihe {

enum class Execution { serial, parallel };

using Objective = std::function<double(const RealVector&)>;

struct SimplexOptions {
    int max_evaluations = 2000;
    /// Stop when the simplex characteristic size drops below this.
    double size_tolerance = 1e-10;
    double initial_step = 1.0;
    /// Re-seed the simplex around the incumbent this many times after it
    /// collapses, while budget remains.
    int reinitializations = 2;
};

struct MinimizeResult {
    RealVector x;
    double value = kHuge;
    int evaluations = 0;
    bool converged = false;

    static constexpr double kHuge = 1e300;
};

struct MultistartResult {
    MinimizeResult best;
    int best_restart = -1;
    std::vector<double> restart_values;
    int total_evaluations = 0;
};

/// Single Nelder-Mead run. Non-finite objective values are treated as a
/// large penalty. The objective must be safe to call concurrently when used
/// through the parallel multistart path.
MinimizeResult simplex_minimize(const Objective& f, const RealVector& start, const SimplexOptions& options);

/// Runs one simplex per start point; the lowest value wins, ties broken by
/// the lowest restart index.
MultistartResult multistart_minimize(const Objective& f, const std::vector<RealVector>& starts,
                                     const SimplexOptions& options, Execution execution);

} // namespace qihe
