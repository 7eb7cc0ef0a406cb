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

// Thermodynamic vocabulary: entropies (bits), relative entropies, Gibbs
// states, free energies and decoherence. Energies are in units of k_B T
// when beta = 1.

#include <limits>

#include "qihe/operator_core.hpp"

namespace qihe {

struct ThermalContext {
    double beta = 1.0;

    explicit ThermalContext(double beta_ = 1.0);
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Shannon entropy in bits of a probability vector, 0 log 0 := 0. Negative
/// round-off entries are clipped.
double shannon_bits(const RealVector& p);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(sigma || tau) in bits; +infinity when supp(sigma) is not inside
/// supp(tau).
double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& tau);

DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalContext& ctx);
DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalContext& ctx, const HilbertSpace& space);

/// ln Tr exp(-beta H), evaluated with the spectrum shifted to avoid overflow.
double log_partition_function(const HermitianOperator& h, const ThermalContext& ctx);

/// -(1/beta) ln Tr exp(-beta H).
double free_energy(const HermitianOperator& h, const ThermalContext& ctx);

/// Diagonal part in the computational basis.
DensityMatrix decohere(const DensityMatrix& rho);

/// (1/N) sum_k decohere(rho^(k)) for N distinguishable qubits.
DensityMatrix averaged_decohered_reduced(const DensityMatrix& rho);

/// (1/N) sum_k rho^(k) for N distinguishable particles.
DensityMatrix averaged_reduced(const DensityMatrix& rho);

// Unvalidated kernels on raw matrices, for inner loops of the minimizers.
namespace kernels {

double entropy_bits(const ComplexMatrix& rho);
double relative_entropy_bits(const ComplexMatrix& sigma, const ComplexMatrix& tau);
ComplexMatrix gibbs(const ComplexMatrix& h, double beta);

} // namespace kernels

} // namespace qihe
