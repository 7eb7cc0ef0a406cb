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

#include "qihe/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>

namespace qihe {

namespace {

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
    return g;
}

bool is_power_of_two(int d) { return d > 1 && (d & (d - 1)) == 0; }

} // namespace

DensityMatrix random_density_matrix(const HilbertSpace& space, int rank, std::uint64_t seed) {
    const int d = space.dim();
    if (rank < 1 || rank > d) throw InvalidArgumentError("random_density_matrix: rank must lie in [1, dim]");
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = ginibre(d, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(space, std::move(rho));
}

DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) throw InvalidArgumentError("random_density_matrix: dim >= 1 required");
    if (is_power_of_two(dim)) {
        const int n = static_cast<int>(std::lround(std::log2(dim)));
        return random_density_matrix(HilbertSpace::distinguishable(n), rank, seed);
    }
    return random_density_matrix(HilbertSpace::qudit(dim), rank, seed);
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

double bisect_monotone(const std::function<double(double)>& f, double target, double expansion_limit) {
    constexpr double kEdge = 1e-12;
    if (std::abs(target - f(-expansion_limit)) <= kEdge) return -kInfinity;
    if (std::abs(target - f(expansion_limit)) <= kEdge) return kInfinity;

    double lo = -1.0;
    double hi = 1.0;
    while (f(lo) > target) {
        hi = lo;
        lo *= 2.0;
        if (-lo > expansion_limit) throw InvalidArgumentError("bisect_monotone: bracket expansion exceeds limit");
    }
    while (f(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > expansion_limit) throw InvalidArgumentError("bisect_monotone: bracket expansion exceeds limit");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

std::pair<ComplexMatrix, ComplexMatrix> ReachableParameterization::states(const ComplexMatrix& rho,
                                                                          const RealVector& params,
                                                                          double beta) const {
    const Eigen::Index d = rho.rows();
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < unitary_parameters(); ++a) k += params(a) * unitary_generators[static_cast<size_t>(a)];
    // exp(K) = exp(-i H) with H = iK Hermitian.
    const ComplexMatrix u = unitary_exp(Complex(0, 1) * k);
    ComplexMatrix field = ComplexMatrix::Zero(d, d);
    for (int b = 0; b < field_parameters(); ++b)
        field += params(unitary_parameters() + b) * field_operators[static_cast<size_t>(b)].matrix();
    return {u * rho * u.adjoint(), kernels::gibbs(field, beta)};
}

ReachableParameterization reachable_parameterization(const ControlSet& cs) {
    ReachableParameterization p;
    p.control_set = cs.name();
    p.unitary_generators = lie_closure_basis(cs);
    switch (cs.kind()) {
    case ControlSetKind::local_independent: {
        const int n = cs.space().n_particles();
        for (int k = 1; k <= n; ++k) p.field_operators.push_back(pauli_on_site(PauliAxis::z, k, n));
        break;
    }
    case ControlSetKind::local_common:
        p.field_operators.push_back(collective_z(cs.space().n_particles()));
        break;
    case ControlSetKind::collective_z:
    case ControlSetKind::c2:
    case ControlSetKind::custom:
        p.field_operators = cs.generators();
        break;
    }
    return p;
}

OracleResult brute_force_su(const DensityMatrix& rho, const ControlSet& cs, const OracleOptions& options,
                            const ThermalContext& ctx) {
    if (cs.space().dim() != rho.dim()) throw DimensionMismatchError("brute_force_su: dimensions differ");
    const auto param = reachable_parameterization(cs);
    const ComplexMatrix& r = rho.matrix();
    const double beta = ctx.beta;

    const Objective objective = [&](const RealVector& x) {
        const auto [rho1, rho2] = param.states(r, x, beta);
        return kernels::relative_entropy_bits(rho1, rho2);
    };

    const int n = param.parameter_count();
    std::vector<RealVector> starts;
    starts.reserve(static_cast<size_t>(options.restarts));
    for (int s = 0; s < options.restarts; ++s) {
        RealVector x = RealVector::Zero(n);
        if (s > 0) {
            std::seed_seq seq{options.seed, static_cast<std::uint64_t>(s)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
            std::uniform_real_distribution<double> field(-2.0, 2.0);
            for (int a = 0; a < param.unitary_parameters(); ++a) x(a) = angle(rng);
            for (int b = 0; b < param.field_parameters(); ++b) x(param.unitary_parameters() + b) = field(rng);
        }
        starts.push_back(std::move(x));
    }

    const auto best = multistart_minimize(objective, starts, options.simplex, options.execution);
    OracleResult out;
    out.bits = best.best.value;
    out.converged = best.best.converged;
    out.evaluations = best.total_evaluations;
    out.best_restart = best.best_restart;
    out.parameters = best.best.x;
    return out;
}

} // namespace qihe
