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

// Scenario description shared by the command-line tools: named and inline
// input states, control-set lookup, and the versioned JSON scenario format.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qihe/control.hpp"
#include "qihe/work.hpp"

namespace qihe {

struct Scenario {
    std::string engine = "1mqihe"; // 1mqihe | 2mqihe | usitir
    WorkMode mode = WorkMode::swap;
    Statistics statistics = Statistics::distinguishable;
    std::optional<int> n;
    std::optional<std::string> control_set;
    std::optional<std::string> state_name;
    std::optional<nlohmann::json> state_matrix;
    std::optional<double> polarization;
    double beta = 1.0;
    int steps = 10000;
    std::uint64_t seed = 0;
    Tolerances tol{};
    bool clamp = false;
};

Statistics parse_statistics(const std::string& s);
WorkMode parse_mode(const std::string& s);

/// Particle count implied by the scenario: explicit n, else the digits of
/// the control-set name, else the length of a ket, else 2.
int scenario_particles(const Scenario& sc);
HilbertSpace scenario_space(const Scenario& sc);

ControlSet control_set_by_name(const std::string& name, Statistics statistics);

/// Named states: |b1...bN> (qubit pattern, or occupation index for bosons and
/// fermions), bell-phi+, werner:p, occupation:n, spectrum:a,b,..., rho-x-rho
/// (alias rho⊗rho), random:rank, mixed.
DensityMatrix named_state(const std::string& name, const HilbertSpace& space, std::uint64_t seed,
                          const Tolerances& tol = {});

/// Inline matrix with entries given as [re, im] pairs (bare numbers are
/// accepted as real). Traces within 1e-6 of one are renormalized; a warning is
/// appended when the deviation exceeds 1e-10.
DensityMatrix inline_state(const nlohmann::json& rows, const HilbertSpace& space, const Tolerances& tol,
                           std::vector<std::string>& warnings);

/// Resolves the input state of a scenario (named or inline).
DensityMatrix scenario_state(const Scenario& sc, std::vector<std::string>& warnings);

/// Parses a scenario document; requires "schema": 1.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

} // namespace qihe
