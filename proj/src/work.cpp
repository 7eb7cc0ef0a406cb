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

#include "qihe/work.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

namespace qihe {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kEdgeTol = 1e-12;
constexpr double kOptimalTol = 1e-9;

void require_distinguishable(const DensityMatrix& rho, const char* who) {
    if (rho.space().statistics() != Statistics::distinguishable)
        throw UnsupportedStatisticsError(std::string(who) + ": requires distinguishable statistics (got " +
                                         to_string(rho.space().statistics()) + ")");
}

// log Z(h) and Z'(h)/Z(h) for Z(h) = sum_j exp(h f_j), shifted for stability.
struct PartitionValues {
    double log_z;
    double mean;
};

PartitionValues partition(const RealVector& f, double h) {
    const RealVector e = h * f;
    const double m = e.maxCoeff();
    const RealVector w = (e.array() - m).exp();
    const double z = w.sum();
    return {m + std::log(z), w.dot(f) / z};
}

double mean_occupation(const DensityMatrix& rho, const RealVector& f) {
    return rho.matrix().diagonal().real().dot(f);
}

void check_fn_space(const DensityMatrix& rho, int n, Statistics statistics, const char* who) {
    if (statistics == Statistics::fermion)
        throw UnsupportedStatisticsError(std::string(who) + ": fermionic statistics have no h-parameterized family");
    const HilbertSpace expected =
        statistics == Statistics::boson ? HilbertSpace::boson(n) : HilbertSpace::distinguishable(n);
    if (!(rho.space() == expected))
        throw UnsupportedStatisticsError(std::string(who) + ": state space does not match N = " +
                                         std::to_string(n) + " " + to_string(statistics));
}

void fill_totals(WorkReport& r, const DensityMatrix& rho, double s_u) {
    r.input_entropy = von_neumann_entropy(rho);
    r.uncontrollable_entropy = s_u;
    r.optimal_work = kLn2 * (std::log2(static_cast<double>(rho.dim())) - r.input_entropy);
    r.work = r.optimal_work - kLn2 * s_u;
    r.is_optimal = s_u <= kOptimalTol;
}

void check_compatible(const DensityMatrix& rho, const ControlSet& cs) {
    const bool ok = cs.kind() == ControlSetKind::custom ? cs.space().dim() == rho.dim() : cs.space() == rho.space();
    if (!ok)
        throw IncompatibleControlSetError("control set " + cs.name() + " acts on a " +
                                          to_string(cs.space().statistics()) + " space of dim " +
                                          std::to_string(cs.space().dim()) + ", state lives on a " +
                                          to_string(rho.space().statistics()) + " space of dim " +
                                          std::to_string(rho.dim()));
}

// Uncontrollable entropy for one state; records intermediates in report.
double uncontrollable(const DensityMatrix& rho, const ControlSet& cs, const ThermalContext& ctx,
                      const WorkOptions& options, WorkReport& report) {
    switch (cs.kind()) {
    case ControlSetKind::local_independent:
        return s_u_local_independent(rho);
    case ControlSetKind::local_common:
        return s_u_local_common(rho);
    case ControlSetKind::collective_z: {
        const auto& space = rho.space();
        const int n = space.n_particles();
        switch (space.statistics()) {
        case Statistics::distinguishable: {
            const auto hs = find_h_star(rho, n, Statistics::distinguishable);
            report.diagnostics["h_star"] = hs.h_star;
            report.diagnostics["j_value"] = hs.j_value;
            return s_u_fn_distinguishable(rho);
        }
        case Statistics::boson: {
            const auto hs = find_h_star(rho, n, Statistics::boson);
            report.diagnostics["h_star"] = hs.h_star;
            report.diagnostics["j_value"] = hs.j_value;
            return -hs.j_value - von_neumann_entropy(rho);
        }
        case Statistics::fermion:
            if (n == 2) return 0.0;
            return von_neumann_entropy(decohere(rho)) - von_neumann_entropy(rho);
        }
        break;
    }
    case ControlSetKind::c2: {
        const double lmin = rho.spectrum()(0);
        if (lmin > options.tol.eigenvalue_floor) {
            const auto sol = ct_solve_c2(rho, ctx, options.tol);
            report.diagnostics["ct_spectral_residual"] = sol.spectral_residual;
            return 0.0;
        }
        if (options.strict_pure_limit) (void)ct_solve_c2(rho, ctx, options.tol);
        report.diagnostics["ct_limit"] = 1.0;
        return 0.0;
    }
    case ControlSetKind::custom: {
        const auto est = brute_force_su(rho, cs, options.oracle, ctx);
        report.numeric_estimate = true;
        report.diagnostics["oracle_evaluations"] = est.evaluations;
        report.diagnostics["oracle_converged"] = est.converged ? 1.0 : 0.0;
        return est.bits;
    }
    }
    throw InvalidArgumentError("extractable_work: unknown control set kind");
}

ComplexMatrix cyclic_shift(int d, int p) {
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) x((j + p) % d, j) = 1.0;
    return x;
}

} // namespace

const char* to_string(WorkMode m) { return m == WorkMode::swap ? "swap" : "feedback"; }
const char* to_string(SzilardMode m) { return m == SzilardMode::feedback_fn ? "feedback_fn" : "full_control"; }

double optimal_work(const DensityMatrix& rho, const ThermalContext&) {
    return kLn2 * (std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho));
}

double work_penalty(const DensityMatrix& rho1, const DensityMatrix& rho2, const ThermalContext&) {
    const double s = relative_entropy(rho1, rho2);
    return std::isinf(s) ? kInfinity : kLn2 * s;
}

double s_u_local_independent(const DensityMatrix& rho) {
    require_distinguishable(rho, "s_u_local_independent");
    double sum = 0.0;
    for (int k = 1; k <= rho.space().n_particles(); ++k) sum += von_neumann_entropy(partial_trace(rho, {k}));
    return sum - von_neumann_entropy(rho);
}

double s_u_local_common(const DensityMatrix& rho) {
    require_distinguishable(rho, "s_u_local_common");
    const int n = rho.space().n_particles();
    return n * von_neumann_entropy(averaged_reduced(rho)) - von_neumann_entropy(rho);
}

double s_u_fn_distinguishable(const DensityMatrix& rho) {
    require_distinguishable(rho, "s_u_fn_distinguishable");
    const int n = rho.space().n_particles();
    return n * von_neumann_entropy(averaged_decohered_reduced(rho)) - von_neumann_entropy(rho);
}

RealVector fn_spectrum(int n, Statistics statistics) {
    switch (statistics) {
    case Statistics::distinguishable:
        return collective_z(n).matrix().diagonal().real();
    case Statistics::boson:
        return boson_fn_operator(n).matrix().diagonal().real();
    case Statistics::fermion:
        break;
    }
    throw UnsupportedStatisticsError("fn_spectrum: fermionic statistics have no h-parameterized family");
}

double fn_j_value(const DensityMatrix& rho, double h, int n, Statistics statistics) {
    check_fn_space(rho, n, statistics, "fn_j_value");
    const RealVector f = fn_spectrum(n, statistics);
    const auto pv = partition(f, h);
    return (h * mean_occupation(rho, f) - pv.log_z) / kLn2;
}

HStarResult find_h_star(const DensityMatrix& rho, int n, Statistics statistics) {
    check_fn_space(rho, n, statistics, "find_h_star");
    const RealVector f = fn_spectrum(n, statistics);
    const double target = mean_occupation(rho, f);
    const double lo_edge = f.minCoeff();
    const double hi_edge = f.maxCoeff();

    auto edge = [&](double value, double h) {
        const auto degeneracy = ((f.array() - value).abs() <= kEdgeTol).count();
        return HStarResult{h, -std::log2(static_cast<double>(degeneracy)), true};
    };
    if (std::abs(target - lo_edge) <= kEdgeTol) return edge(lo_edge, -kInfinity);
    if (std::abs(target - hi_edge) <= kEdgeTol) return edge(hi_edge, kInfinity);
    if (target < lo_edge || target > hi_edge)
        throw InvalidArgumentError("find_h_star: <F_N> outside the spectrum range");

    auto g = [&](double h) { return partition(f, h).mean - target; };
    double lo = -1.0;
    double hi = 1.0;
    while (g(lo) > 0) lo *= 2.0;
    while (g(hi) < 0) hi *= 2.0;

    boost::uintmax_t max_iter = 400;
    const auto bracket =
        boost::math::tools::bisect(g, lo, hi, boost::math::tools::eps_tolerance<double>(), max_iter);
    const double h = 0.5 * (bracket.first + bracket.second);

    HStarResult out;
    out.h_star = h;
    out.j_value = (h * target - partition(f, h).log_z) / kLn2;
    out.converged = std::abs(g(h)) <= 1e-10;
    return out;
}

double s_u_fn_boson(const DensityMatrix& rho, int n) {
    const auto hs = find_h_star(rho, n, Statistics::boson);
    return -hs.j_value - von_neumann_entropy(rho);
}

WorkReport extractable_work(const DensityMatrix& rho, const ControlSet& cs, const ThermalContext& ctx,
                            const WorkOptions& options) {
    check_compatible(rho, cs);
    WorkReport r;
    r.control_set = cs.name();
    r.mode = WorkMode::swap;
    const double s_u = uncontrollable(rho, cs, ctx, options, r);
    fill_totals(r, rho, s_u);
    return r;
}

std::vector<DensityMatrix> post_measurement_states(const DensityMatrix& rho) {
    const auto& space = rho.space();
    const int d = rho.dim();
    std::vector<DensityMatrix> out;
    if (space.is_qubits() && space.n_particles() > 1) {
        const int n = space.n_particles();
        const ComplexMatrix x = pauli(PauliAxis::x);
        const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        for (int b = 0; b < (1 << n); ++b) {
            ComplexMatrix u = ComplexMatrix::Identity(1, 1);
            for (int k = 0; k < n; ++k) u = tensor(u, ((b >> (n - 1 - k)) & 1) ? x : id);
            out.emplace_back(space, u * rho.matrix() * u.adjoint());
        }
        return out;
    }
    for (int p = 0; p < d; ++p) {
        const ComplexMatrix u = cyclic_shift(d, p);
        out.emplace_back(space, u * rho.matrix() * u.adjoint());
    }
    return out;
}

WorkReport feedback_work(const DensityMatrix& rho, const ControlSet& cs, const ThermalContext& ctx,
                         const WorkOptions& options) {
    check_compatible(rho, cs);
    const auto outcomes = post_measurement_states(rho);
    WorkReport r;
    r.control_set = cs.name();
    r.mode = WorkMode::feedback;
    r.outcome_su.resize(outcomes.size());
    for (std::size_t p = 0; p < outcomes.size(); ++p) {
        WorkReport scratch;
        r.outcome_su[p] = uncontrollable(outcomes[p], cs, ctx, options, scratch);
        if (scratch.numeric_estimate) r.numeric_estimate = true;
    }
    double mean = 0.0;
    for (double s : r.outcome_su) mean += s;
    mean /= static_cast<double>(r.outcome_su.size());
    fill_totals(r, rho, mean);
    return r;
}

WorkReport szilard_summary(Statistics statistics, SzilardMode mode, const ThermalContext& ctx) {
    HilbertSpace space = HilbertSpace::distinguishable(2);
    if (statistics == Statistics::boson) space = HilbertSpace::boson(2);
    if (statistics == Statistics::fermion) space = HilbertSpace::fermion(2);
    const auto ancilla = DensityMatrix::basis_state(space, 0);
    if (mode == SzilardMode::feedback_fn) {
        auto r = feedback_work(ancilla, ControlSet::collective_z(space), ctx);
        return r;
    }
    WorkReport r;
    r.control_set = "full";
    r.mode = WorkMode::feedback;
    fill_totals(r, ancilla, 0.0);
    return r;
}

} // namespace qihe
