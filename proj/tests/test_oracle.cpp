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

#include "helpers.hpp"

#include "qihe/work.hpp"

using namespace qihe_test;

TEST_CASE("monotone bisection") {
    const auto tanh_f = [](double x) { return std::tanh(x); };
    CHECK(std::abs(bisect_monotone(tanh_f, 0.5) - 0.5493061443340548) < 1e-12);
    CHECK(std::abs(bisect_monotone(tanh_f, std::tanh(1.0)) - 1.0) < 1e-12);
    CHECK(bisect_monotone(tanh_f, 0.0) == doctest::Approx(0.0));
    CHECK(bisect_monotone(tanh_f, 1.0) == kInfinity);
    CHECK(bisect_monotone(tanh_f, -1.0) == -kInfinity);
    CHECK_THROWS_AS(bisect_monotone(tanh_f, 2.0), InvalidArgumentError);
    const auto cubic = [](double x) { return x * x * x; };
    CHECK(bisect_monotone(cubic, 27.0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("random density matrices") {
    for (int rank = 1; rank <= 4; ++rank) {
        const auto rho = random_density_matrix(4, rank, 99);
        CHECK(rho.space() == HilbertSpace::distinguishable(2));
        const RealVector s = rho.spectrum();
        int nonzero = 0;
        for (int k = 0; k < 4; ++k) nonzero += s(k) > 1e-10;
        CHECK(nonzero == rank);
    }
    CHECK(random_density_matrix(3, 2, 1).space() == HilbertSpace::qudit(3));
    const auto a = random_density_matrix(4, 3, 5);
    const auto b = random_density_matrix(4, 3, 5);
    CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);
    CHECK(max_abs(a.matrix() - random_density_matrix(4, 3, 6).matrix()) > 1e-3);
    CHECK_THROWS_AS(random_density_matrix(4, 5, 0), InvalidArgumentError);
    const auto boson = random_density_matrix(HilbertSpace::boson(2), 2, 3);
    CHECK(boson.space() == HilbertSpace::boson(2));
}

TEST_CASE("random unitaries") {
    for (int d : {2, 3, 4, 8}) {
        const ComplexMatrix u = random_unitary(d, static_cast<std::uint64_t>(d));
        CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(d, d)) < 1e-12);
    }
}

TEST_CASE("reachable parameterization sizes") {
    const auto l2 = reachable_parameterization(ControlSet::local_independent(2));
    CHECK(l2.unitary_parameters() == 6);
    CHECK(l2.field_parameters() == 2);
    const auto g2 = reachable_parameterization(ControlSet::local_common(2));
    CHECK(g2.unitary_parameters() == 3);
    CHECK(g2.field_parameters() == 1);
    for (int n = 1; n <= 3; ++n) {
        const auto fn = reachable_parameterization(ControlSet::collective_z(HilbertSpace::distinguishable(n)));
        CHECK(fn.unitary_parameters() == 1);
        CHECK(fn.field_parameters() == 1);
    }
}

TEST_CASE("the collective phase is inert for F_N") {
    const auto param = reachable_parameterization(ControlSet::collective_z(HilbertSpace::distinguishable(2)));
    const auto rho = random_density_matrix(4, 4, 8);
    for (double h : {-0.7, 0.0, 0.4}) {
        RealVector x0(2);
        x0 << 0.0, h;
        const auto [r0, g0] = param.states(rho.matrix(), x0, 1.0);
        const double base = kernels::relative_entropy_bits(r0, g0);
        for (double theta : {-2.0, 0.3, 1.9}) {
            RealVector x(2);
            x << theta, h;
            const auto [r1, g1] = param.states(rho.matrix(), x, 1.0);
            CHECK(kernels::relative_entropy_bits(r1, g1) == doctest::Approx(base).epsilon(1e-10));
        }
    }
}

TEST_CASE("brute force reproduces closed forms on Werner states") {
    const auto w = werner(0.5);
    const double closed = 0.4512050593046013;
    CHECK(std::abs(s_u_local_independent(w) - closed) < 1e-12);
    for (const auto& cs : {ControlSet::local_independent(2), ControlSet::local_common(2),
                           ControlSet::collective_z(HilbertSpace::distinguishable(2))}) {
        const auto est = brute_force_su(w, cs);
        CHECK(est.bits == doctest::Approx(closed).epsilon(1e-3));
        CHECK(est.bits >= closed - 1e-6);
    }
}

TEST_CASE("brute force on the bosonic F2 family") {
    const std::array<double, 3> p{0.5, 0.5, 0.0};
    const auto rho = DensityMatrix::diagonal(HilbertSpace::boson(2), p);
    const auto est = brute_force_su(rho, ControlSet::collective_z(HilbertSpace::boson(2)));
    CHECK(std::abs(est.bits - 0.3002068332819543) < 1e-6);
}

TEST_CASE("brute force is deterministic across execution modes") {
    const auto rho = random_density_matrix(4, 3, 17);
    OracleOptions serial;
    serial.execution = Execution::serial;
    serial.restarts = 8;
    OracleOptions parallel = serial;
    parallel.execution = Execution::parallel;
    const auto a = brute_force_su(rho, ControlSet::local_independent(2), serial);
    const auto b = brute_force_su(rho, ControlSet::local_independent(2), parallel);
    CHECK(a.bits == b.bits);
    CHECK(a.best_restart == b.best_restart);
    CHECK(a.evaluations == b.evaluations);
    CHECK((a.parameters - b.parameters).norm() == 0.0);
}

TEST_CASE("brute force rejects mismatched dimensions") {
    CHECK_THROWS_AS(brute_force_su(qubit_diag(0.3), ControlSet::c2()), DimensionMismatchError);
}
