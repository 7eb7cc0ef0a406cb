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

// Quasi-static simulation of single- and two-qubit information heat engine
// cycles with an explicit battery ledger, plus the three-stage decomposition
// of extractable work.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qihe/work.hpp"

namespace qihe {

double brillouin_mu(double b, double mu_m, double beta);
/// B_f with tanh(beta mu_M B_f) = c.
double optimal_bf(double c, double mu_m, double beta);

struct ClosedFormCycle {
    double fee = 0.0; // x tanh x - ln cosh x, x = beta mu_M B_f
    double es = 0.0;  // ln2 (1 - S(rho_S)) with S in bits
    double b_final = 0.0;
};
ClosedFormCycle closed_form_cycle_work(double c, double mu_m, double beta);

struct EngineSpec {
    double mu_m = 1.0;
    ThermalContext ctx{};
    int steps = 10000;
    DensityMatrix ancilla_state = DensityMatrix::maximally_mixed(HilbertSpace::distinguishable(1));
    WorkMode mode = WorkMode::swap;
    double inductance = 1.0;
    bool clamp = false;
    std::uint64_t seed = 0;
    /// Identity offset f(s) added to the Hamiltonian along normalized cycle
    /// time s in [0, 1]; must satisfy f(0) = f(1).
    std::function<double(double)> identity_offset;
};

enum class Stage { i, ii, iii };
const char* to_string(Stage s);

struct CycleSample {
    int t = 0;
    Stage stage = Stage::i;
    double b = 0.0;
    double mu_z = 0.0;
    double r = 0.0;
    double e_battery = 0.0;
};

struct CycleTrace {
    std::vector<CycleSample> samples;
    double final_work = 0.0;       // units of k_B T
    double closed_form_work = 0.0; // units of k_B T
    double entropy_in = 0.0;       // bits
    double relative_deviation = 0.0;
    double stage_ii_increment = 0.0; // raw battery energy
    double clamp_error_bound = 0.0;
    double polarization = 0.0;
    double b_final = 0.0;
};

/// Clamp eigenvalues below 1e-6 up to 1e-6 and renormalize.
DensityMatrix clamp_spectrum(const DensityMatrix& rho, double floor = 1e-6);

CycleTrace run_1mqihe(const EngineSpec& spec);

struct FeedbackTrace {
    CycleTrace trace; // sampled branch
    int outcome = 1;  // 1 or 2
    std::array<double, 2> probabilities{};
    std::array<double, 2> branch_work{};
    double expected_work = 0.0;
};
FeedbackTrace run_1mqihe_feedback(const EngineSpec& spec);

CycleTrace run_2mqihe(const DensityMatrix& rho_in, const EngineSpec& spec);

struct StagedReport {
    WorkReport report; // from extractable_work
    DensityMatrix rho1;
    DensityMatrix rho2;
    std::optional<HermitianOperator> control_hamiltonian; // -ln(rho2)/beta, full rank only
    std::optional<double> us_work;
    std::optional<double> ir_work;
    double it_penalty = 0.0;
    double reversible_yield = 0.0;
    double total = 0.0;
};
StagedReport usitir_stage_machine(const DensityMatrix& rho_in, const ControlSet& cs,
                                  const ThermalContext& ctx = ThermalContext{});

} // namespace qihe
