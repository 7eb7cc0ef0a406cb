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

// Brute-force verification tools: random states, a monotone bisection root
// finder, and direct numerical minimization of the relative entropy between
// reachable states and reachable Gibbs states.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qihe/control.hpp"
#include "qihe/entropy.hpp"
#include "qihe/multistart.hpp"

namespace qihe {

/// Ginibre construction G G^dagger / tr with G of shape dim x rank.
DensityMatrix random_density_matrix(const HilbertSpace& space, int rank, std::uint64_t seed);
/// Space inferred from the dimension: distinguishable qubits when dim is a
/// power of two, otherwise a single qudit.
DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Root of f(x) = target for strictly increasing f. Returns -inf / +inf when
/// target equals the lower / upper asymptote (estimated at -+limit) within
/// 1e-12. Throws InvalidArgumentError when no bracket is found within
/// |x| <= limit.
double bisect_monotone(const std::function<double(double)>& f, double target, double expansion_limit = 1e3);

/// Reachable states of a control set: rho1 = U rho U^dagger with
/// U = exp(sum_a theta_a A_a) over the Lie-closure basis, rho2 the Gibbs
/// state of sum_b phi_b K_b.
struct ReachableParameterization {
    std::string control_set;
    std::vector<ComplexMatrix> unitary_generators; // anti-Hermitian
    std::vector<HermitianOperator> field_operators;

    int unitary_parameters() const { return static_cast<int>(unitary_generators.size()); }
    int field_parameters() const { return static_cast<int>(field_operators.size()); }
    int parameter_count() const { return unitary_parameters() + field_parameters(); }

    std::pair<ComplexMatrix, ComplexMatrix> states(const ComplexMatrix& rho, const RealVector& params,
                                                   double beta) const;
};

/// Named sets use the reduced field families (z fields after local
/// rotation); custom sets and C_2 use every generator as a field.
ReachableParameterization reachable_parameterization(const ControlSet& cs);

struct OracleOptions {
    int restarts = 32;
    SimplexOptions simplex{2000, 1e-10, 1.0, 2};
    std::uint64_t seed = 0;
    Execution execution = Execution::parallel;
};

struct OracleResult {
    double bits = 0.0;
    bool converged = false;
    int evaluations = 0;
    int best_restart = -1;
    RealVector parameters;
};

/// min S(rho1 || rho2) in bits over the reachable parameterization. An upper
/// bound on the true uncontrollable entropy up to optimizer noise.
OracleResult brute_force_su(const DensityMatrix& rho, const ControlSet& cs, const OracleOptions& options = {},
                            const ThermalContext& ctx = ThermalContext{});

} // namespace qihe
