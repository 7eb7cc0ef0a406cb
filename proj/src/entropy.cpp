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

#include "qihe/entropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qihe {

namespace {

constexpr double kSupportEigenvalue = 1e-12;
constexpr double kSupportWeight = 1e-10;

} // namespace

ThermalContext::ThermalContext(double beta_) : beta(beta_) {
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
        std::ostringstream os;
        os << "ThermalContext invariant violated: beta > 0 (beta = " << beta_ << ")";
        throw InvalidArgumentError(os.str());
    }
}

double shannon_bits(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double v = p(i);
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

namespace kernels {

double entropy_bits(const ComplexMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
    return shannon_bits(es.eigenvalues().cwiseMax(0.0));
}

double relative_entropy_bits(const ComplexMatrix& sigma, const ComplexMatrix& tau) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_tau(tau);
    const RealVector& lt = es_tau.eigenvalues();
    const ComplexMatrix& vt = es_tau.eigenvectors();
    // Tr sigma log tau = sum_k <v_k|sigma|v_k> log lambda_k
    double cross = 0.0;
    for (Eigen::Index k = 0; k < lt.size(); ++k) {
        const double weight = (vt.col(k).adjoint() * sigma * vt.col(k))(0, 0).real();
        if (lt(k) < kSupportEigenvalue) {
            if (weight > kSupportWeight) return kInfinity;
            continue;
        }
        cross += weight * std::log2(lt(k));
    }
    const double s = entropy_bits(sigma);
    return std::max(0.0, -s - cross);
}

ComplexMatrix gibbs(const ComplexMatrix& h, double beta) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const RealVector& l = es.eigenvalues();
    const double lmin = l(0);
    RealVector w = (-beta * (l.array() - lmin)).exp();
    w /= w.sum();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace kernels

double von_neumann_entropy(const DensityMatrix& rho) {
    return shannon_bits(rho.spectrum());
}

double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& tau) {
    if (sigma.dim() != tau.dim()) throw DimensionMismatchError("relative_entropy: dimensions differ");
    return kernels::relative_entropy_bits(sigma.matrix(), tau.matrix());
}

DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalContext& ctx) {
    return gibbs_state(h, ctx, HilbertSpace::qudit(h.dim()));
}

DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalContext& ctx, const HilbertSpace& space) {
    return DensityMatrix(space, kernels::gibbs(h.matrix(), ctx.beta));
}

double log_partition_function(const HermitianOperator& h, const ThermalContext& ctx) {
    const auto eig = eig_hermitian(h);
    const double lmin = eig.values(0);
    const double z_shifted = (-ctx.beta * (eig.values.array() - lmin)).exp().sum();
    return std::log(z_shifted) - ctx.beta * lmin;
}

double free_energy(const HermitianOperator& h, const ThermalContext& ctx) {
    return -log_partition_function(h, ctx) / ctx.beta;
}

DensityMatrix decohere(const DensityMatrix& rho) {
    ComplexMatrix d = ComplexMatrix::Zero(rho.dim(), rho.dim());
    d.diagonal() = rho.matrix().diagonal().real().cast<Complex>();
    return DensityMatrix(rho.space(), std::move(d));
}

DensityMatrix averaged_reduced(const DensityMatrix& rho) {
    const auto& space = rho.space();
    if (space.statistics() != Statistics::distinguishable)
        throw UnsupportedStatisticsError(std::string("averaged_reduced: requires distinguishable statistics (got ") +
                                         to_string(space.statistics()) + ")");
    const int n = space.n_particles();
    ComplexMatrix acc = ComplexMatrix::Zero(space.local_dim(), space.local_dim());
    for (int k = 1; k <= n; ++k) acc += partial_trace(rho, {k}).matrix();
    return DensityMatrix(HilbertSpace::distinguishable(1, space.local_dim()), acc / double(n));
}

DensityMatrix averaged_decohered_reduced(const DensityMatrix& rho) {
    const auto& space = rho.space();
    if (!space.is_qubits())
        throw UnsupportedStatisticsError(
            std::string("averaged_decohered_reduced: requires distinguishable qubits (got ") +
            to_string(space.statistics()) + ")");
    const int n = space.n_particles();
    ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
    for (int k = 1; k <= n; ++k) acc += decohere(partial_trace(rho, {k})).matrix();
    return DensityMatrix(HilbertSpace::distinguishable(1, 2), acc / double(n));
}

} // namespace qihe
