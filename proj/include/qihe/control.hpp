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

// Control sets, density-matrix controllability (Lie-algebra closure) and
// controllable thermalizability (spectrum matching of Gibbs states).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qihe/entropy.hpp"
#include "qihe/multistart.hpp"
#include "qihe/operator_core.hpp"

namespace qihe {

enum class ControlSetKind { local_independent, local_common, collective_z, c2, custom };

class ControlSet {
  public:
    /// L_N: sigma_{x,y,z} on every qubit independently.
    static ControlSet local_independent(int n_qubits);
    /// G_N: sum_k sigma_a^(k) for a in {x, y, z}.
    static ControlSet local_common(int n_qubits);
    /// F_N: the collective sum_k sigma_z^(k), expressed in the given space
    /// (distinguishable register, bosonic occupation basis or the trivial
    /// two-fermion space).
    static ControlSet collective_z(const HilbertSpace& space);
    /// C_2: single-qubit Paulis on both qubits plus the Heisenberg coupling.
    static ControlSet c2();
    static ControlSet custom(std::string name, const HilbertSpace& space, std::vector<HermitianOperator> generators);

    ControlSetKind kind() const { return kind_; }
    /// "L2", "G3", "F2", "C2" or the custom label.
    const std::string& name() const { return name_; }
    const HilbertSpace& space() const { return space_; }
    const std::vector<HermitianOperator>& generators() const { return generators_; }
    int size() const { return static_cast<int>(generators_.size()); }

    /// sum_j c_j H_j (+ c_identity I when coefficients has size() + 1 entries).
    HermitianOperator combine(const std::vector<double>& coefficients) const;

  private:
    ControlSet(ControlSetKind kind, std::string name, HilbertSpace space, std::vector<HermitianOperator> generators);

    ControlSetKind kind_;
    std::string name_;
    HilbertSpace space_;
    std::vector<HermitianOperator> generators_;
};

/// Orthonormal basis (real inner product Re tr(A^dagger B)) of the Lie
/// algebra generated by the traceless parts i(H_j - tr(H_j)/D).
std::vector<ComplexMatrix> lie_closure_basis(const ControlSet& cs);
int lie_closure_dim(const ControlSet& cs);
bool is_dmc(const ControlSet& cs);

bool unitarily_equivalent(const DensityMatrix& a, const DensityMatrix& b, double tol = 1e-8);

/// max |sorted spec(rho_beta(H)) - sorted spec(rho)|.
double spectral_residual(const HermitianOperator& h, const DensityMatrix& rho, const ThermalContext& ctx);

/// Shift s with sorted spec(H) = sorted spec(-ln(rho)/beta) + s, if it
/// exists. Throws PureLimitError when rho has eigenvalues below the floor.
std::optional<double> spectrum_shift_match(const DensityMatrix& rho, const HermitianOperator& h,
                                           const ThermalContext& ctx, double tol = 1e-9,
                                           const Tolerances& tols = {});

struct CtSolution {
    /// One entry per generator of the set, then the identity coefficient.
    std::vector<double> coefficients;
    HermitianOperator achieved_hamiltonian;
    double spectral_residual = 0.0;
};

/// Parameters (c1, c2, c3, c4) of
///   H = c1 (1 - Z1)/2 + c2 (1 - Z2)/2 + c3 (1 - H_heis)/2 + c4 1
/// whose spectrum equals `targets` (any order).
std::array<double, 4> c2_intrinsic_coefficients(std::array<double, 4> targets);
HermitianOperator c2_intrinsic_hamiltonian(const std::array<double, 4>& c);

/// Constructive controllable-thermalizability solution for C_2.
CtSolution ct_solve_c2(const DensityMatrix& rho, const ThermalContext& ctx, const Tolerances& tol = {});

struct CtSearchOptions {
    int restarts = 16;
    SimplexOptions simplex{4000, 1e-12, 1.0, 3};
    double coefficient_box = 50.0;
    double accept_residual = 1e-6;
    std::uint64_t seed = 0;
    Execution execution = Execution::parallel;
};

struct CtSearchResult {
    std::optional<CtSolution> solution;
    double best_residual = 0.0;
    int best_restart = -1;
};

/// Derivative-free search over generator coefficients for a Gibbs state
/// unitarily equivalent to rho.
CtSearchResult ct_search_generic(const ControlSet& cs, const DensityMatrix& rho, const ThermalContext& ctx,
                                 const CtSearchOptions& options = {}, const Tolerances& tol = {});

} // namespace qihe
