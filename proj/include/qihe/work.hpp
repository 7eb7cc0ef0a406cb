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

// Uncontrollable entropies and extractable work for the named control sets,
// swap and feedback protocols, and Szilard-engine scenarios.

#include <map>
#include <string>
#include <vector>

#include "qihe/control.hpp"
#include "qihe/entropy.hpp"
#include "qihe/oracle.hpp"

namespace qihe {

enum class WorkMode { swap, feedback };
const char* to_string(WorkMode m);

struct WorkReport {
    double input_entropy = 0.0;          // bits
    double uncontrollable_entropy = 0.0; // bits
    double work = 0.0;                   // units of k_B T
    double optimal_work = 0.0;           // units of k_B T
    bool is_optimal = false;
    std::string control_set;
    WorkMode mode = WorkMode::swap;
    bool numeric_estimate = false;
    std::map<std::string, double> diagnostics;
    std::vector<double> outcome_su; // feedback only
};

struct HStarResult {
    double h_star = 0.0; // may be -inf / +inf at the spectrum edges
    double j_value = 0.0; // bits
    bool converged = false;
};

struct WorkOptions {
    // Raise PureLimitError for rank-deficient inputs on C_2 instead of using
    // the thermal-limit convention.
    bool strict_pure_limit = false;
    OracleOptions oracle{};
    Tolerances tol{};
};

double optimal_work(const DensityMatrix& rho, const ThermalContext& ctx = ThermalContext{});
double work_penalty(const DensityMatrix& rho1, const DensityMatrix& rho2, const ThermalContext& ctx = ThermalContext{});

double s_u_local_independent(const DensityMatrix& rho);
double s_u_local_common(const DensityMatrix& rho);
double s_u_fn_distinguishable(const DensityMatrix& rho);

/// Diagonal of F_N for the given statistics (distinguishable or boson).
RealVector fn_spectrum(int n, Statistics statistics);
/// J(h) = Tr{rho log2 rho_2(h)} with rho_2(h) = e^{h F_N} / Z(h).
double fn_j_value(const DensityMatrix& rho, double h, int n, Statistics statistics);
HStarResult find_h_star(const DensityMatrix& rho, int n, Statistics statistics);
double s_u_fn_boson(const DensityMatrix& rho, int n);

WorkReport extractable_work(const DensityMatrix& rho, const ControlSet& cs,
                            const ThermalContext& ctx = ThermalContext{}, const WorkOptions& options = {});

/// Equally likely outcomes of the feedback gate. Distinguishable qubits get
/// the local NOT patterns X^{b_1} (x) ... (x) X^{b_N}; other spaces get the
/// cyclic shift powers X^p.
std::vector<DensityMatrix> post_measurement_states(const DensityMatrix& rho);

WorkReport feedback_work(const DensityMatrix& rho, const ControlSet& cs, const ThermalContext& ctx = ThermalContext{},
                         const WorkOptions& options = {});

enum class SzilardMode { feedback_fn, full_control };
const char* to_string(SzilardMode m);

/// Two-particle Szilard engine with pure ancillas |0...0>.
WorkReport szilard_summary(Statistics statistics, SzilardMode mode, const ThermalContext& ctx = ThermalContext{});

} // namespace qihe
