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

#include "qihe/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qihe {

namespace {

constexpr double kClosureResidual = 1e-9;

RealVector flatten(const ComplexMatrix& a) {
    RealVector v(2 * a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        v(2 * i) = a.data()[i].real();
        v(2 * i + 1) = a.data()[i].imag();
    }
    return v;
}

ComplexMatrix unflatten(const RealVector& v, Eigen::Index dim) {
    ComplexMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Complex(v(2 * i), v(2 * i + 1));
    return a;
}

RealVector sorted_values(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void require_qubits(int n) {
    if (n < 1 || n > 12) throw InvalidArgumentError("control set: n_qubits must lie in [1, 12]");
}

} // namespace

// -- ControlSet --------------------------------------------------------------

ControlSet::ControlSet(ControlSetKind kind, std::string name, HilbertSpace space,
                       std::vector<HermitianOperator> generators)
    : kind_(kind), name_(std::move(name)), space_(space), generators_(std::move(generators)) {
    if (generators_.empty()) throw InvalidArgumentError("ControlSet: at least one generator required");
    for (const auto& g : generators_)
        if (g.dim() != space_.dim())
            throw DimensionMismatchError("ControlSet invariant violated: all generators share the space dimension");
}

ControlSet ControlSet::local_independent(int n_qubits) {
    require_qubits(n_qubits);
    std::vector<HermitianOperator> gens;
    for (int k = 1; k <= n_qubits; ++k)
        for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) gens.push_back(pauli_on_site(axis, k, n_qubits));
    return {ControlSetKind::local_independent, "L" + std::to_string(n_qubits),
            HilbertSpace::distinguishable(n_qubits), std::move(gens)};
}

ControlSet ControlSet::local_common(int n_qubits) {
    require_qubits(n_qubits);
    std::vector<HermitianOperator> gens;
    for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
        HermitianOperator acc = HermitianOperator::zero(1 << n_qubits);
        for (int k = 1; k <= n_qubits; ++k) acc = acc + pauli_on_site(axis, k, n_qubits);
        gens.push_back(acc);
    }
    return {ControlSetKind::local_common, "G" + std::to_string(n_qubits), HilbertSpace::distinguishable(n_qubits),
            std::move(gens)};
}

ControlSet ControlSet::collective_z(const HilbertSpace& space) {
    const int n = space.n_particles();
    const std::string name = "F" + std::to_string(n);
    switch (space.statistics()) {
    case Statistics::distinguishable:
        if (space.local_dim() != 2)
            throw IncompatibleControlSetError("collective_z: F_N is defined on qubits (local_dim = 2)");
        require_qubits(n);
        return {ControlSetKind::collective_z, name, space, {qihe::collective_z(n)}};
    case Statistics::boson:
        return {ControlSetKind::collective_z, name, space, {boson_fn_operator(n)}};
    case Statistics::fermion:
        if (n == 1) return {ControlSetKind::collective_z, name, space, {qihe::collective_z(1)}};
        // Two fermionic qubits live in the antisymmetric singlet, where the
        // collective sigma_z vanishes.
        return {ControlSetKind::collective_z, name, space, {HermitianOperator::zero(1)}};
    }
    throw InvalidArgumentError("collective_z: unknown statistics");
}

ControlSet ControlSet::c2() {
    std::vector<HermitianOperator> gens;
    for (int k = 1; k <= 2; ++k)
        for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) gens.push_back(pauli_on_site(axis, k, 2));
    gens.push_back(heisenberg(1, 2, 2));
    return {ControlSetKind::c2, "C2", HilbertSpace::distinguishable(2), std::move(gens)};
}

ControlSet ControlSet::custom(std::string name, const HilbertSpace& space, std::vector<HermitianOperator> generators) {
    return {ControlSetKind::custom, std::move(name), space, std::move(generators)};
}

HermitianOperator ControlSet::combine(const std::vector<double>& coefficients) const {
    const auto n = generators_.size();
    if (coefficients.size() != n && coefficients.size() != n + 1)
        throw DimensionMismatchError("ControlSet::combine: expected one coefficient per generator (plus identity)");
    ComplexMatrix acc = ComplexMatrix::Zero(space_.dim(), space_.dim());
    for (std::size_t j = 0; j < n; ++j) acc += coefficients[j] * generators_[j].matrix();
    if (coefficients.size() == n + 1) acc.diagonal().array() += coefficients[n];
    return HermitianOperator(std::move(acc));
}

// -- Lie closure -------------------------------------------------------------

std::vector<ComplexMatrix> lie_closure_basis(const ControlSet& cs) {
    const Eigen::Index dim = cs.space().dim();
    const std::size_t max_dim = static_cast<std::size_t>(dim * dim - 1);
    std::vector<RealVector> basis;

    auto try_add = [&](const ComplexMatrix& a) {
        if (basis.size() >= max_dim) return false;
        ComplexMatrix traceless = a;
        traceless.diagonal().array() -= a.trace() / double(dim);
        RealVector v = flatten(traceless);
        const double norm = v.norm();
        if (norm < 1e-12) return false;
        v /= norm;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        const double residual = v.norm();
        if (residual <= kClosureResidual) return false;
        basis.push_back(v / residual);
        return true;
    };

    for (const auto& g : cs.generators()) try_add(Complex(0, 1) * g.matrix());

    // Every pair (i, j < i) of basis elements is bracketed exactly once; new
    // elements extend the outer loop, so the loop ends at closure.
    const std::size_t iteration_cap = static_cast<std::size_t>(dim * dim * dim * dim);
    std::size_t iterations = 0;
    for (std::size_t i = 0; i < basis.size() && basis.size() < max_dim; ++i) {
        const ComplexMatrix bi = unflatten(basis[i], dim);
        for (std::size_t j = 0; j < i && basis.size() < max_dim; ++j) {
            if (++iterations > iteration_cap) break;
            try_add(commutator(bi, unflatten(basis[j], dim)));
        }
    }

    std::vector<ComplexMatrix> out;
    out.reserve(basis.size());
    for (const auto& v : basis) out.push_back(unflatten(v, dim));
    return out;
}

int lie_closure_dim(const ControlSet& cs) {
    return static_cast<int>(lie_closure_basis(cs).size());
}

bool is_dmc(const ControlSet& cs) {
    const int d = cs.space().dim();
    return lie_closure_dim(cs) == d * d - 1;
}

// -- thermalizability --------------------------------------------------------

bool unitarily_equivalent(const DensityMatrix& a, const DensityMatrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    return (a.spectrum() - b.spectrum()).cwiseAbs().maxCoeff() <= tol;
}

double spectral_residual(const HermitianOperator& h, const DensityMatrix& rho, const ThermalContext& ctx) {
    if (h.dim() != rho.dim()) throw DimensionMismatchError("spectral_residual: dimensions differ");
    const RealVector g = sorted_values(kernels::gibbs(h.matrix(), ctx.beta));
    return (g - rho.spectrum()).cwiseAbs().maxCoeff();
}

namespace {

// Targets t = -ln(r)/beta, ascending.
RealVector thermal_targets(const DensityMatrix& rho, const ThermalContext& ctx, const Tolerances& tols,
                           const char* what) {
    const RealVector r = rho.spectrum();
    if (r(0) < tols.eigenvalue_floor) {
        std::ostringstream os;
        os << what << ": state has an eigenvalue below the floor " << tols.eigenvalue_floor
           << " (pure limit: only Hamiltonians with infinite energy differences would thermalize it)";
        throw PureLimitError(os.str());
    }
    RealVector t = -r.array().log() / ctx.beta;
    std::sort(t.data(), t.data() + t.size());
    return t;
}

} // namespace

std::optional<double> spectrum_shift_match(const DensityMatrix& rho, const HermitianOperator& h,
                                           const ThermalContext& ctx, double tol, const Tolerances& tols) {
    if (h.dim() != rho.dim()) throw DimensionMismatchError("spectrum_shift_match: dimensions differ");
    const RealVector t = thermal_targets(rho, ctx, tols, "spectrum_shift_match");
    const RealVector l = eig_hermitian(h).values;
    const double s = l.mean() - t.mean();
    const double scale = std::max({1.0, l.cwiseAbs().maxCoeff(), t.cwiseAbs().maxCoeff()});
    const double mismatch = (l.array() - t.array() - s).abs().maxCoeff();
    if (mismatch > tol * scale) return std::nullopt;
    return s;
}

std::array<double, 4> c2_intrinsic_coefficients(std::array<double, 4> targets) {
    std::sort(targets.begin(), targets.end());
    const auto [t1, t2, t3, t4] = targets;
    // Assignment: c4 -> t2, c4 + c1 + c2 -> t3, middle block -> (t1, t4).
    const double c4 = t2;
    const double c3 = 0.5 * (t1 + t4 - t2 - t3);
    const double sum12 = t3 - t2;
    const double gap = t4 - t1;
    const double disc = std::max(0.0, gap * gap - 4.0 * c3 * c3);
    const double diff12 = std::sqrt(disc);
    return {0.5 * (sum12 + diff12), 0.5 * (sum12 - diff12), c3, c4};
}

HermitianOperator c2_intrinsic_hamiltonian(const std::array<double, 4>& c) {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    // basis |00>, |01>, |10>, |11>
    h(0, 0) = c[3];
    h(1, 1) = c[1] + c[2] + c[3];
    h(2, 2) = c[0] + c[2] + c[3];
    h(3, 3) = c[0] + c[1] + c[3];
    h(1, 2) = -c[2];
    h(2, 1) = -c[2];
    return HermitianOperator(std::move(h));
}

CtSolution ct_solve_c2(const DensityMatrix& rho, const ThermalContext& ctx, const Tolerances& tol) {
    if (rho.dim() != 4) throw DimensionMismatchError("ct_solve_c2: requires a two-qubit (dim 4) state");
    const RealVector t = thermal_targets(rho, ctx, tol, "ct_solve_c2");
    const auto c = c2_intrinsic_coefficients({t(0), t(1), t(2), t(3)});
    HermitianOperator h = c2_intrinsic_hamiltonian(c);

    // Coefficients over C_2 = {X1, Y1, Z1, X2, Y2, Z2, H_heis} plus identity.
    std::vector<double> coeffs(8, 0.0);
    coeffs[2] = -0.5 * c[0];
    coeffs[5] = -0.5 * c[1];
    coeffs[6] = -0.5 * c[2];
    coeffs[7] = 0.5 * (c[0] + c[1] + c[2]) + c[3];

    const double residual = spectral_residual(h, rho, ctx);
    return CtSolution{std::move(coeffs), std::move(h), residual};
}

CtSearchResult ct_search_generic(const ControlSet& cs, const DensityMatrix& rho, const ThermalContext& ctx,
                                 const CtSearchOptions& options, const Tolerances& tol) {
    if (cs.space().dim() != rho.dim()) throw DimensionMismatchError("ct_search_generic: dimensions differ");
    const RealVector t = thermal_targets(rho, ctx, tol, "ct_search_generic");
    const double box = options.coefficient_box;
    const int n = cs.size();

    auto hamiltonian = [&cs, n, box](const RealVector& x) {
        ComplexMatrix acc = ComplexMatrix::Zero(cs.space().dim(), cs.space().dim());
        for (int j = 0; j < n; ++j) acc += std::clamp(x(j), -box, box) * cs.generators()[static_cast<size_t>(j)].matrix();
        return acc;
    };

    // Max-norm distance between the Gibbs spectrum and the spectrum of rho.
    const RealVector target = rho.spectrum();
    const double beta = ctx.beta;
    const Objective objective = [&](const RealVector& x) {
        const RealVector l = sorted_values(hamiltonian(x));
        const RealVector e = -beta * (l.array() - l(0));
        RealVector g = e.array().exp();
        g /= g.sum();
        std::reverse(g.data(), g.data() + g.size());
        double penalty = 0.0;
        for (int j = 0; j < n; ++j) penalty += std::max(0.0, std::abs(x(j)) - box);
        return (g - target).cwiseAbs().maxCoeff() + penalty;
    };

    const double spread = std::min(box, std::max(1.0, t(t.size() - 1) - t(0)));
    std::vector<RealVector> starts;
    starts.reserve(static_cast<size_t>(options.restarts));
    for (int r = 0; r < options.restarts; ++r) {
        RealVector x = RealVector::Zero(n);
        if (r > 0) {
            std::seed_seq seq{options.seed, static_cast<std::uint64_t>(r)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> u(-spread, spread);
            for (int j = 0; j < n; ++j) x(j) = u(rng);
        }
        starts.push_back(std::move(x));
    }

    const auto best = multistart_minimize(objective, starts, options.simplex, options.execution);
    const RealVector& x = best.best.x;

    ComplexMatrix h = hamiltonian(x);
    const RealVector l = sorted_values(h);
    const double identity = t.mean() - l.mean();
    h.diagonal().array() += identity;

    std::vector<double> coeffs(static_cast<size_t>(n) + 1);
    for (int j = 0; j < n; ++j) coeffs[static_cast<size_t>(j)] = std::clamp(x(j), -box, box);
    coeffs[static_cast<size_t>(n)] = identity;

    HermitianOperator achieved(std::move(h));
    const double residual = spectral_residual(achieved, rho, ctx);

    CtSearchResult out;
    out.best_residual = residual;
    out.best_restart = best.best_restart;
    if (residual <= options.accept_residual) out.solution = CtSolution{std::move(coeffs), std::move(achieved), residual};
    return out;
}

} // namespace qihe
