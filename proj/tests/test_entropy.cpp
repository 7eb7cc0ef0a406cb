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

using namespace qihe_test;

TEST_CASE("thermal context rejects non-positive beta") {
    CHECK_THROWS_AS(ThermalContext(0.0), InvalidArgumentError);
    CHECK_THROWS_AS(ThermalContext(-1.0), InvalidArgumentError);
    CHECK(ThermalContext(2.0).beta == 2.0);
}

TEST_CASE("von Neumann entropy") {
    for (int d : {2, 3, 4, 8})
        CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(HilbertSpace::qudit(d))) ==
              doctest::Approx(std::log2(d)).epsilon(1e-14));
    CHECK(von_neumann_entropy(bell_phi_plus()) == doctest::Approx(0.0).epsilon(1e-14));
    // Qubit in equilibrium at beta mu_M B_f = 1.
    const double p = std::exp(1.0) / (2.0 * std::cosh(1.0));
    CHECK(std::abs(von_neumann_entropy(qubit_diag(p)) - 0.5270653410031616) < 1e-14);
    CHECK(std::abs(von_neumann_entropy(qubit_diag(p)) - (std::log(2 * std::cosh(1.0)) - std::tanh(1.0)) / kLn2) <
          1e-14);
}

TEST_CASE("relative entropy") {
    const auto rho = random_density_matrix(4, 4, 5);
    CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));
    const auto zero = qubit_diag(1.0);
    const auto one = qubit_diag(0.0);
    CHECK(relative_entropy(zero, qubit_diag(0.5)) == doctest::Approx(1.0));
    CHECK(std::isinf(relative_entropy(zero, one)));
    CHECK(relative_entropy(zero, one) > 0);
    CHECK_THROWS_AS(relative_entropy(zero, rho), DimensionMismatchError);
}

TEST_CASE("gibbs states") {
    const ThermalContext ctx;
    const auto g0 = gibbs_state(HermitianOperator::zero(3), ctx);
    CHECK(max_abs(g0.matrix() - ComplexMatrix::Identity(3, 3) / 3.0) < 1e-15);

    const double mu_b = 0.8;
    const auto h = HermitianOperator(pauli(PauliAxis::z)) * (-mu_b);
    const auto g = gibbs_state(h, ctx);
    CHECK(g.matrix()(0, 0).real() == doctest::Approx(std::exp(mu_b) / (2 * std::cosh(mu_b))));
    CHECK(g.matrix()(1, 1).real() == doctest::Approx(std::exp(-mu_b) / (2 * std::cosh(mu_b))));

    // Z = sum_lambda e^{-beta lambda} for h F2 at beta = 1.
    const double hh = 0.37;
    const auto f = collective_z(2) * hh;
    const double z = std::exp(-2 * hh) + 2.0 + std::exp(2 * hh);
    CHECK(log_partition_function(f, ctx) == doctest::Approx(std::log(z)).epsilon(1e-14));
    CHECK(gibbs_state(f, ctx).matrix()(0, 0).real() == doctest::Approx(std::exp(-2 * hh) / z));

    const auto big = HermitianOperator(pauli(PauliAxis::z)) * 2000.0;
    const auto gb = gibbs_state(big, ctx);
    CHECK(gb.matrix()(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("free energy") {
    const ThermalContext ctx;
    CHECK(free_energy(HermitianOperator::zero(5), ctx) == doctest::Approx(-std::log(5.0)));
    const auto h = HermitianOperator(pauli(PauliAxis::z)) * -1.0;
    CHECK(std::abs(free_energy(h, ctx) - (-1.1269280110429725)) < 1e-14);
    CHECK(free_energy(h.shifted(2.5), ctx) == doctest::Approx(free_energy(h, ctx) + 2.5));
    const ThermalContext hot(0.25);
    CHECK(free_energy(HermitianOperator::zero(2), hot) == doctest::Approx(-std::log(2.0) / 0.25));
}

TEST_CASE("decoherence") {
    const auto d = qubit_diag(0.3);
    CHECK(max_abs(decohere(d).matrix() - d.matrix()) == 0.0);
    Eigen::VectorXcd plus(2);
    plus << 1.0, 1.0;
    const auto p = DensityMatrix::pure(HilbertSpace::distinguishable(1), plus);
    CHECK(max_abs(decohere(p).matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto rho = random_density_matrix(4, 1 + static_cast<int>(seed % 4), seed);
        CHECK(von_neumann_entropy(decohere(rho)) >= von_neumann_entropy(rho) - 1e-12);
    }
}

TEST_CASE("averaged reduced states") {
    const auto s = HilbertSpace::distinguishable(2);
    const auto r00 = averaged_decohered_reduced(DensityMatrix::basis_state(s, 0));
    CHECK(max_abs(r00.matrix() - qubit_diag(1.0).matrix()) < 1e-15);
    const auto r10 = averaged_decohered_reduced(DensityMatrix::basis_state(s, 2));
    CHECK(max_abs(r10.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
    const auto rb = averaged_decohered_reduced(bell_phi_plus());
    CHECK(max_abs(rb.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
    CHECK_THROWS_AS(averaged_decohered_reduced(DensityMatrix::basis_state(HilbertSpace::boson(2), 0)),
                    UnsupportedStatisticsError);
    const auto ar = averaged_reduced(tensor(qubit_diag(0.2), qubit_diag(0.6)));
    CHECK(ar.matrix()(0, 0).real() == doctest::Approx(0.4));
}

TEST_CASE("raw kernels agree with the validated API") {
    const auto a = random_density_matrix(4, 4, 1);
    const auto b = random_density_matrix(4, 4, 2);
    CHECK(kernels::entropy_bits(a.matrix()) == doctest::Approx(von_neumann_entropy(a)).epsilon(1e-14));
    CHECK(kernels::relative_entropy_bits(a.matrix(), b.matrix()) ==
          doctest::Approx(relative_entropy(a, b)).epsilon(1e-14));
}
