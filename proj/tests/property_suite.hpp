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

// Randomized invariant checks shared by the unit tests and the acceptance
// gate. Each property reports its case count and number of violations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qihe/cycle.hpp"
#include "qihe/oracle.hpp"
#include "qihe/work.hpp"

namespace qihe_props {

using namespace qihe;

struct PropertyResult {
    std::string name;
    int cases = 0;
    int violations = 0;
    double worst = 0.0; // largest observed violation margin
};

class Tally {
  public:
    explicit Tally(std::string name) { r_.name = std::move(name); }
    // Records a case; excess > 0 is a violation.
    void add(double excess) {
        ++r_.cases;
        if (!(excess <= 0.0)) {
            ++r_.violations;
            r_.worst = std::max(r_.worst, std::isnan(excess) ? 1e300 : excess);
        }
    }
    PropertyResult result() const { return r_; }

  private:
    PropertyResult r_;
};

inline DensityMatrix random_two_qubit(std::uint64_t seed) {
    return random_density_matrix(HilbertSpace::distinguishable(2), 1 + static_cast<int>(seed % 4), seed);
}

inline std::vector<ControlSet> distinguishable_sets() {
    return {ControlSet::local_independent(2), ControlSet::local_common(2),
            ControlSet::collective_z(HilbertSpace::distinguishable(2)), ControlSet::c2()};
}

inline std::vector<PropertyResult> run_property_suite(std::uint64_t seed = 2026, int cases = 100) {
    std::vector<PropertyResult> out;
    const auto sets = distinguishable_sets();
    const auto boson_set = ControlSet::collective_z(HilbertSpace::boson(2));
    const ThermalContext ctx;

    {
        Tally nonneg("uncontrollable entropy is non-negative");
        Tally bound("extractable work never exceeds the optimum");
        for (int k = 0; k < cases; ++k) {
            const auto rho = random_two_qubit(seed + static_cast<std::uint64_t>(k));
            for (const auto& cs : sets) {
                const auto r = extractable_work(rho, cs, ctx);
                nonneg.add(-r.uncontrollable_entropy - 1e-9);
                bound.add(r.work - r.optimal_work - 1e-9);
            }
            const auto b = random_density_matrix(HilbertSpace::boson(2), 1 + k % 3, seed + 7000 + static_cast<std::uint64_t>(k));
            const auto rb = extractable_work(b, boson_set, ctx);
            nonneg.add(-rb.uncontrollable_entropy - 1e-9);
            bound.add(rb.work - rb.optimal_work - 1e-9);
        }
        out.push_back(nonneg.result());
        out.push_back(bound.result());
    }

    {
        Tally conc("common controls never beat independent ones");
        for (int k = 0; k < cases; ++k) {
            const auto rho = random_two_qubit(seed + 1000 + static_cast<std::uint64_t>(k));
            conc.add(s_u_local_independent(rho) - s_u_local_common(rho) - 1e-9);
        }
        out.push_back(conc.result());
    }

    {
        Tally fact("factorizable inputs are optimal under independent controls");
        Tally equal("equal-factor inputs are optimal under common controls");
        for (int k = 0; k < cases; ++k) {
            const auto s = seed + 2000 + 2 * static_cast<std::uint64_t>(k);
            const auto q = HilbertSpace::distinguishable(1);
            const auto a = random_density_matrix(q, 1 + k % 2, s);
            const auto b = random_density_matrix(q, 1 + (k / 2) % 2, s + 1);
            fact.add(std::abs(s_u_local_independent(tensor(a, b))) - 1e-9);
            equal.add(std::abs(s_u_local_common(tensor(a, a))) - 1e-9);
        }
        out.push_back(fact.result());
        out.push_back(equal.result());
    }

    {
        Tally inert("identity offsets leave cycle work unchanged");
        std::mt19937_64 rng(seed + 3000);
        std::uniform_real_distribution<double> amp(-3.0, 3.0);
        std::uniform_int_distribution<int> freq(1, 5);
        std::uniform_real_distribution<double> pol(0.0, 0.95);
        for (int k = 0; k < cases; ++k) {
            const double a1 = amp(rng);
            const double a2 = amp(rng);
            const int f = freq(rng);
            EngineSpec spec;
            spec.steps = 20;
            const double c = pol(rng);
            const std::array<double, 2> p{0.5 * (1 + c), 0.5 * (1 - c)};
            spec.ancilla_state = DensityMatrix::diagonal(HilbertSpace::distinguishable(1), p);
            const double base = run_1mqihe(spec).final_work;
            spec.identity_offset = [=](double u) {
                return a1 * std::sin(2 * std::numbers::pi * f * u) + a2 * u * (1 - u);
            };
            inert.add(std::abs(run_1mqihe(spec).final_work - base) - 1e-10);
            if (k % 5 == 0) {
                EngineSpec two;
                two.steps = 20;
                two.identity_offset = spec.identity_offset;
                const auto rho = random_density_matrix(4, 4, seed + 3500 + static_cast<std::uint64_t>(k));
                EngineSpec plain;
                plain.steps = 20;
                inert.add(std::abs(run_2mqihe(rho, two).final_work - run_2mqihe(rho, plain).final_work) - 1e-10);
            }
        }
        out.push_back(inert.result());
    }

    {
        Tally shift("Gibbs states ignore identity offsets");
        Tally comm("Gibbs states commute with their Hamiltonian");
        Tally entropy_range("entropy lies in [0, log2 D]");
        Tally unitary("entropy is unitarily invariant");
        Tally klein("relative entropy is non-negative");
        Tally self("relative entropy vanishes on equal arguments");
        std::mt19937_64 rng(seed + 4000);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int k = 0; k < cases; ++k) {
            const int dim = 2 + k % 7;
            ComplexMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
            const HermitianOperator h(0.5 * (m + m.adjoint()));
            const double c = 5.0 * g(rng);
            const auto g0 = gibbs_state(h, ctx);
            shift.add((gibbs_state(h.shifted(c), ctx).matrix() - g0.matrix()).cwiseAbs().maxCoeff() - 1e-10);
            comm.add(commutator(g0.matrix(), h.matrix()).cwiseAbs().maxCoeff() - 1e-10);

            const auto rho = random_density_matrix(dim, 1 + k % dim, seed + 4100 + static_cast<std::uint64_t>(k));
            const double s = von_neumann_entropy(rho);
            entropy_range.add(std::max(-s, s - std::log2(dim)) - 1e-12);
            const ComplexMatrix u = random_unitary(dim, seed + 4200 + static_cast<std::uint64_t>(k));
            const DensityMatrix rot(rho.space(), u * rho.matrix() * u.adjoint());
            unitary.add(std::abs(von_neumann_entropy(rot) - s) - 1e-9);

            const auto tau = random_density_matrix(dim, dim, seed + 4300 + static_cast<std::uint64_t>(k));
            klein.add(-relative_entropy(rho, tau) - 1e-12);
            self.add(std::abs(relative_entropy(tau, tau)) - 1e-9);
        }
        for (auto* t : {&shift, &comm, &entropy_range, &unitary, &klein, &self}) out.push_back(t->result());
    }

    {
        Tally staged("stage decomposition totals match extractable work");
        for (int k = 0; k < 2 * cases; ++k) {
            const auto rho = random_two_qubit(seed + 5000 + static_cast<std::uint64_t>(k));
            for (const auto& cs : sets) {
                const auto st = usitir_stage_machine(rho, cs, ctx);
                staged.add(std::abs(st.total - st.report.work) - 1e-8);
            }
            const auto b = random_density_matrix(HilbertSpace::boson(2), 1 + k % 3, seed + 6000 + static_cast<std::uint64_t>(k));
            const auto sb = usitir_stage_machine(b, boson_set, ctx);
            staged.add(std::abs(sb.total - sb.report.work) - 1e-8);
        }
        out.push_back(staged.result());
    }

    {
        Tally psd("random density matrices satisfy the density invariants");
        Tally roundtrip("log inverts exp on Hermitian operators");
        std::mt19937_64 rng(seed + 8000);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int k = 0; k < cases; ++k) {
            const int dim = 2 + k % 15;
            const auto rho = random_density_matrix(dim, 1 + k % dim, seed + 8100 + static_cast<std::uint64_t>(k));
            const RealVector spec = eig_hermitian_unchecked(rho.matrix()).values;
            const double herm = hermiticity_residual(rho.matrix());
            psd.add(std::max({std::abs(rho.matrix().trace().real() - 1.0) - 1e-10, -spec(0) - 1e-10, herm - 1e-12}));

            const ComplexMatrix v = random_unitary(dim, seed + 8200 + static_cast<std::uint64_t>(k));
            RealVector lam(dim);
            for (int j = 0; j < dim; ++j) lam(j) = u(rng);
            const HermitianOperator h(v * lam.cast<Complex>().asDiagonal() * v.adjoint());
            const auto e = matrix_function(h, [](double x) { return std::exp(x); });
            const auto back = matrix_function(e, [](double x) { return std::log(x); });
            roundtrip.add((back.matrix() - h.matrix()).cwiseAbs().maxCoeff() - 1e-8);
        }
        out.push_back(psd.result());
        out.push_back(roundtrip.result());
    }
    return out;
}

} // namespace qihe_props
