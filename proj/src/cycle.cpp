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

#include "qihe/cycle.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qihe {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPureLimit = 1e-12;

void validate(const EngineSpec& spec) {
    if (spec.steps < 10) throw InvalidArgumentError("EngineSpec invariant violated: steps >= 10");
    if (!(spec.mu_m > 0)) throw InvalidArgumentError("EngineSpec invariant violated: mu_M > 0");
    if (spec.identity_offset) {
        const double drift = spec.identity_offset(1.0) - spec.identity_offset(0.0);
        if (std::abs(drift) > 1e-12)
            throw InvalidArgumentError("EngineSpec invariant violated: identity offset must satisfy f(0) = f(1)");
    }
}

double relative_deviation(double value, double reference) {
    const double d = std::abs(value - reference);
    return reference != 0.0 ? d / std::abs(reference) : d;
}

// Accumulates the battery ledger E += -dR + mean(mu) dB - df sample by sample.
class Ledger {
  public:
    Ledger(const EngineSpec& spec, int total_samples) : spec_(spec), total_(total_samples) {}

    void push(Stage stage, double b, double mu_z, double r) {
        const double f = offset(static_cast<int>(trace.samples.size()));
        if (!trace.samples.empty()) {
            const auto& prev = trace.samples.back();
            energy_ += -(r - prev.r) + 0.5 * (mu_z + prev.mu_z) * (b - prev.b) - (f - f_prev_);
        }
        f_prev_ = f;
        trace.samples.push_back({static_cast<int>(trace.samples.size()), stage, b, mu_z, r, energy_});
    }

    double energy() const { return energy_; }

    CycleTrace trace;

  private:
    double offset(int index) const {
        if (!spec_.identity_offset) return 0.0;
        return spec_.identity_offset(static_cast<double>(index) / static_cast<double>(total_ - 1));
    }

    const EngineSpec& spec_;
    int total_;
    double energy_ = 0.0;
    double f_prev_ = 0.0;
};

// Single-qubit cycle for signed polarization c (mu_z after stage i is c mu_M).
CycleTrace one_qubit_cycle(double c, const EngineSpec& spec) {
    const double mu = spec.mu_m;
    const double beta = spec.ctx.beta;
    const double bf = std::copysign(optimal_bf(std::abs(c), mu, beta), c);
    const double half_l = 0.5 * spec.inductance;
    auto r_of = [&](double b, double mz) { return half_l * b * b + mz * b; };

    Ledger ledger(spec, 2 + 2 * spec.steps);
    ledger.push(Stage::i, 0.0, 0.0, 0.0);
    ledger.push(Stage::i, 0.0, c * mu, 0.0);
    const double before_ii = ledger.energy();
    for (int k = 1; k <= spec.steps; ++k) {
        const double b = bf * k / spec.steps;
        ledger.push(Stage::ii, b, c * mu, r_of(b, c * mu));
    }
    ledger.trace.stage_ii_increment = ledger.energy() - before_ii;
    for (int k = spec.steps - 1; k >= 0; --k) {
        const double b = bf * k / spec.steps;
        const double mz = brillouin_mu(b, mu, beta);
        ledger.push(Stage::iii, b, mz, r_of(b, mz));
    }
    CycleTrace t = std::move(ledger.trace);
    t.final_work = beta * ledger.energy();
    t.polarization = c;
    t.b_final = bf;
    return t;
}

double polarization(const DensityMatrix& rho) {
    const RealVector s = rho.spectrum();
    return s(1) - s(0);
}

struct PreparedAncilla {
    DensityMatrix state;
    double clamp_error = 0.0;
    double entropy_in = 0.0;
};

PreparedAncilla prepare(const DensityMatrix& rho, bool clamp) {
    PreparedAncilla p{rho, 0.0, von_neumann_entropy(rho)};
    if (clamp) {
        p.state = clamp_spectrum(rho);
        p.clamp_error = kLn2 * (von_neumann_entropy(p.state) - p.entropy_in);
    }
    return p;
}

void require_qubit_ancilla(const EngineSpec& spec) {
    if (spec.ancilla_state.dim() != 2)
        throw DimensionMismatchError("EngineSpec invariant violated: 1MQIHE ancilla must be a single qubit");
}

} // namespace

const char* to_string(Stage s) {
    switch (s) {
    case Stage::i:
        return "i";
    case Stage::ii:
        return "ii";
    case Stage::iii:
        return "iii";
    }
    return "?";
}

double brillouin_mu(double b, double mu_m, double beta) { return mu_m * std::tanh(beta * mu_m * b); }

double optimal_bf(double c, double mu_m, double beta) {
    if (!(c >= 0.0) || c > 1.0) throw DomainError("optimal_bf: polarization c must lie in [0, 1)");
    if (c >= 1.0 - kPureLimit)
        throw PureLimitError("optimal_bf: c = 1 requires an unbounded field (pure-state limit)");
    return std::atanh(c) / (beta * mu_m);
}

ClosedFormCycle closed_form_cycle_work(double c, double mu_m, double beta) {
    ClosedFormCycle out;
    out.b_final = optimal_bf(c, mu_m, beta);
    const double x = beta * mu_m * out.b_final;
    out.fee = x * std::tanh(x) - std::log(std::cosh(x));
    const std::array<double, 2> p{0.5 * (1 + c), 0.5 * (1 - c)};
    const double s = von_neumann_entropy(DensityMatrix::diagonal(HilbertSpace::distinguishable(1), p));
    out.es = kLn2 * (1.0 - s);
    return out;
}

DensityMatrix clamp_spectrum(const DensityMatrix& rho, double floor) {
    const auto ed = eig_hermitian_unchecked(rho.matrix());
    RealVector v = ed.values.cwiseMax(floor);
    v /= v.sum();
    ComplexMatrix m = ed.vectors * v.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
    return DensityMatrix(rho.space(), std::move(m));
}

CycleTrace run_1mqihe(const EngineSpec& spec) {
    validate(spec);
    require_qubit_ancilla(spec);
    const auto anc = prepare(spec.ancilla_state, spec.clamp);
    const double c = polarization(anc.state);
    CycleTrace t = one_qubit_cycle(c, spec);
    t.entropy_in = anc.entropy_in;
    t.clamp_error_bound = anc.clamp_error;
    t.closed_form_work = spec.clamp ? kLn2 * (1.0 - anc.entropy_in)
                                    : closed_form_cycle_work(c, spec.mu_m, spec.ctx.beta).fee;
    t.relative_deviation = relative_deviation(t.final_work, t.closed_form_work);
    return t;
}

FeedbackTrace run_1mqihe_feedback(const EngineSpec& spec) {
    validate(spec);
    require_qubit_ancilla(spec);
    const auto anc = prepare(spec.ancilla_state, spec.clamp);
    const double c = polarization(anc.state);

    // S (qubit 1) depolarized, A (qubit 2) aligned with the z axis.
    const HilbertSpace q1 = HilbertSpace::distinguishable(1);
    const std::array<double, 2> pa{0.5 * (1 + c), 0.5 * (1 - c)};
    const auto rho_as = tensor(DensityMatrix::maximally_mixed(q1), DensityMatrix::diagonal(q1, pa));
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = 1.0;
    cnot(2, 3) = cnot(3, 2) = 1.0;
    const ComplexMatrix after = cnot * rho_as.matrix() * cnot.adjoint();

    FeedbackTrace out;
    std::array<double, 2> signed_c{};
    const ComplexMatrix sz = pauli(PauliAxis::z);
    for (int p = 0; p < 2; ++p) {
        const ComplexMatrix block = after.block(2 * p, 2 * p, 2, 2);
        const double prob = block.trace().real();
        out.probabilities[static_cast<size_t>(p)] = prob;
        signed_c[static_cast<size_t>(p)] = prob > 0 ? (block * sz).trace().real() / prob : 0.0;
    }

    std::array<CycleTrace, 2> branches;
    for (int p = 0; p < 2; ++p) {
        branches[static_cast<size_t>(p)] = one_qubit_cycle(signed_c[static_cast<size_t>(p)], spec);
        out.branch_work[static_cast<size_t>(p)] = branches[static_cast<size_t>(p)].final_work;
    }
    out.expected_work = out.probabilities[0] * out.branch_work[0] + out.probabilities[1] * out.branch_work[1];

    std::mt19937_64 rng(spec.seed);
    std::bernoulli_distribution second(out.probabilities[1]);
    out.outcome = second(rng) ? 2 : 1;
    out.trace = std::move(branches[static_cast<size_t>(out.outcome - 1)]);
    out.trace.entropy_in = anc.entropy_in;
    out.trace.clamp_error_bound = anc.clamp_error;
    out.trace.closed_form_work = spec.clamp ? kLn2 * (1.0 - anc.entropy_in)
                                            : closed_form_cycle_work(c, spec.mu_m, spec.ctx.beta).fee;
    out.trace.relative_deviation = relative_deviation(out.trace.final_work, out.trace.closed_form_work);
    return out;
}

CycleTrace run_2mqihe(const DensityMatrix& rho_in, const EngineSpec& spec) {
    validate(spec);
    if (rho_in.dim() != 4) throw DimensionMismatchError("run_2mqihe: requires a two-qubit (dim 4) state");
    const ControlSet c2 = ControlSet::c2();
    if (!is_dmc(c2)) throw IncompatibleControlSetError("run_2mqihe: C2 is not dynamically maximally controllable");

    const auto prepared = prepare(rho_in.with_space(HilbertSpace::distinguishable(2)), spec.clamp);
    const auto sol = ct_solve_c2(prepared.state, spec.ctx);
    const ComplexMatrix h = sol.achieved_hamiltonian.matrix() -
                            ComplexMatrix::Identity(4, 4) * (sol.achieved_hamiltonian.trace() / 4.0);
    const auto ed = eig_hermitian_unchecked(h);
    const double beta = spec.ctx.beta;
    auto m_equilibrium = [&](double lambda) {
        const RealVector e = -beta * lambda * ed.values;
        const RealVector w = (e.array() - e.maxCoeff()).exp();
        return -w.dot(ed.values) / w.sum();
    };
    // Stage i steers the input onto rho_beta(H_beta), which shares its spectrum.
    const double m_fixed = m_equilibrium(1.0);

    Ledger ledger(spec, 2 + 2 * spec.steps);
    ledger.push(Stage::i, 0.0, 0.0, 0.0);
    ledger.push(Stage::i, 0.0, m_fixed, 0.0);
    const double before_ii = ledger.energy();
    for (int k = 1; k <= spec.steps; ++k) {
        const double lambda = static_cast<double>(k) / spec.steps;
        ledger.push(Stage::ii, lambda, m_fixed, lambda * m_fixed);
    }
    ledger.trace.stage_ii_increment = ledger.energy() - before_ii;
    for (int k = spec.steps - 1; k >= 0; --k) {
        const double lambda = static_cast<double>(k) / spec.steps;
        const double m = m_equilibrium(lambda);
        ledger.push(Stage::iii, lambda, m, lambda * m);
    }

    CycleTrace t = std::move(ledger.trace);
    t.final_work = beta * ledger.energy();
    t.entropy_in = prepared.entropy_in;
    t.clamp_error_bound = prepared.clamp_error;
    t.closed_form_work = kLn2 * (2.0 - prepared.entropy_in);
    t.relative_deviation = relative_deviation(t.final_work, t.closed_form_work);
    t.b_final = 1.0;
    return t;
}

StagedReport usitir_stage_machine(const DensityMatrix& rho_in, const ControlSet& cs, const ThermalContext& ctx) {
    if (cs.kind() == ControlSetKind::custom)
        throw InvalidArgumentError("usitir_stage_machine: requires a named control set");
    WorkReport report = extractable_work(rho_in, cs, ctx);
    const auto& space = rho_in.space();
    const int n = space.n_particles();

    DensityMatrix rho2 = rho_in;
    switch (cs.kind()) {
    case ControlSetKind::local_independent: {
        DensityMatrix acc = partial_trace(rho_in, {1});
        for (int k = 2; k <= n; ++k) acc = tensor(acc, partial_trace(rho_in, {k}));
        rho2 = acc;
        break;
    }
    case ControlSetKind::local_common: {
        const DensityMatrix avg = averaged_reduced(rho_in);
        DensityMatrix acc = avg;
        for (int k = 2; k <= n; ++k) acc = tensor(acc, avg);
        rho2 = acc;
        break;
    }
    case ControlSetKind::collective_z:
        switch (space.statistics()) {
        case Statistics::distinguishable: {
            const DensityMatrix avg = averaged_decohered_reduced(rho_in);
            DensityMatrix acc = avg;
            for (int k = 2; k <= n; ++k) acc = tensor(acc, avg);
            rho2 = acc;
            break;
        }
        case Statistics::boson: {
            const auto hs = find_h_star(rho_in, n, Statistics::boson);
            if (std::isinf(hs.h_star))
                rho2 = DensityMatrix::basis_state(space, hs.h_star < 0 ? 0 : space.dim() - 1);
            else
                rho2 = gibbs_state(boson_fn_operator(n) * (-hs.h_star / ctx.beta), ctx, space);
            break;
        }
        case Statistics::fermion:
            rho2 = n == 2 ? rho_in : decohere(rho_in);
            break;
        }
        break;
    case ControlSetKind::c2:
    case ControlSetKind::custom:
        break;
    }
    rho2 = rho2.with_space(space);

    StagedReport out{std::move(report), rho_in, rho2, std::nullopt, std::nullopt, std::nullopt, 0.0, 0.0, 0.0};
    const double d = static_cast<double>(rho_in.dim());
    out.it_penalty = work_penalty(out.rho1, out.rho2, ctx);
    out.reversible_yield = kLn2 * (std::log2(d) - von_neumann_entropy(out.rho1));
    out.total = out.reversible_yield - out.it_penalty;

    if (rho2.spectrum()(0) > Tolerances{}.eigenvalue_floor) {
        const double beta = ctx.beta;
        HermitianOperator hc =
            matrix_function(HermitianOperator(rho2.matrix()), [beta](double x) { return -std::log(x) / beta; });
        out.us_work = -beta * (out.rho1.matrix() * hc.matrix()).trace().real();
        out.ir_work = beta * (free_energy(hc, ctx) - free_energy(HermitianOperator::zero(rho2.dim()), ctx));
        out.control_hamiltonian = std::move(hc);
    }
    return out;
}

} // namespace qihe
