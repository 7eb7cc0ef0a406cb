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

TEST_CASE("hilbert space dimensions") {
    CHECK(HilbertSpace::distinguishable(3).dim() == 8);
    CHECK(HilbertSpace::distinguishable(2, 3).dim() == 9);
    CHECK(HilbertSpace::boson(2).dim() == 3);
    CHECK(HilbertSpace::boson(5).dim() == 6);
    CHECK(HilbertSpace::fermion(1).dim() == 2);
    CHECK(HilbertSpace::fermion(2).dim() == 1);
    CHECK_THROWS_AS(HilbertSpace::fermion(3), UnsupportedStatisticsError);
    CHECK_THROWS_AS(HilbertSpace::distinguishable(0), InvalidArgumentError);
}

TEST_CASE("hermitian operator validation") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator{m}, InvalidOperatorError);
    try {
        HermitianOperator h{m};
    } catch (const InvalidOperatorError& e) {
        CHECK(std::string(e.what()).find("Hermitian") != std::string::npos);
    }
    const auto h = HermitianOperator(pauli(PauliAxis::x));
    CHECK(max_abs((h * 2.0 + h).matrix() - 3.0 * pauli(PauliAxis::x)) == 0.0);
    CHECK(h.shifted(1.5).trace() == doctest::Approx(3.0));
    CHECK_THROWS_AS(h + HermitianOperator::identity(3), DimensionMismatchError);
}

TEST_CASE("density matrix invariants name the violated condition") {
    const auto q = HilbertSpace::distinguishable(1);
    auto message = [&](const ComplexMatrix& m) {
        try {
            DensityMatrix rho(q, m);
        } catch (const InvalidDensityMatrixError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    ComplexMatrix bad_trace = ComplexMatrix::Identity(2, 2);
    CHECK(message(bad_trace).find("trace = 1") != std::string::npos);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK(message(negative).find("smallest eigenvalue") != std::string::npos);
    ComplexMatrix skew = ComplexMatrix::Identity(2, 2) / 2.0;
    skew(0, 1) = 0.1;
    CHECK(message(skew).find("Hermitian") != std::string::npos);
    CHECK_THROWS_AS(DensityMatrix(HilbertSpace::distinguishable(2), ComplexMatrix::Identity(2, 2) / 2.0),
                    DimensionMismatchError);
}

TEST_CASE("density matrix factories") {
    const auto s = HilbertSpace::distinguishable(2);
    CHECK(max_abs(DensityMatrix::maximally_mixed(s).matrix() - ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);
    const auto b = DensityMatrix::basis_state(s, 2);
    CHECK(b.matrix()(2, 2).real() == 1.0);
    CHECK_THROWS_AS(DensityMatrix::basis_state(s, 4), InvalidArgumentError);
    const RealVector spec = bell_phi_plus().spectrum();
    CHECK(spec(3) == doctest::Approx(1.0));
    CHECK(spec(0) >= 0.0);
}

TEST_CASE("tensor products") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(tensor(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);
    ComplexMatrix zi = ComplexMatrix::Zero(4, 4);
    zi.diagonal() << 1, 1, -1, -1;
    CHECK(max_abs(tensor(pauli(PauliAxis::z), i2) - zi) == 0.0);
    ComplexMatrix xx = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) xx(k, 3 - k) = 1.0;
    CHECK(max_abs(tensor(pauli(PauliAxis::x), pauli(PauliAxis::x)) - xx) == 0.0);
    const auto rho = tensor(qubit_diag(0.3), qubit_diag(0.8));
    CHECK(rho.space() == HilbertSpace::distinguishable(2));
}

TEST_CASE("partial trace") {
    const auto s = HilbertSpace::distinguishable(2);
    const auto r00 = partial_trace(DensityMatrix::basis_state(s, 0), {1});
    CHECK(max_abs(r00.matrix() - qubit_diag(1.0).matrix()) < 1e-15);
    const auto bell = partial_trace(bell_phi_plus(), {1});
    CHECK(max_abs(bell.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

    const auto a = random_density_matrix(HilbertSpace::distinguishable(1), 2, 11);
    const auto b = random_density_matrix(HilbertSpace::distinguishable(2), 3, 12);
    const auto ab = tensor(a, b);
    CHECK(max_abs(partial_trace(ab, {1}).matrix() - a.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(ab, {2, 3}).matrix() - b.matrix()) < 1e-12);

    CHECK_THROWS_AS(partial_trace(ab, {3, 3}), InvalidArgumentError);
    CHECK_THROWS_AS(partial_trace(ab, {4}), InvalidArgumentError);
    CHECK_THROWS_AS(partial_trace(DensityMatrix::basis_state(HilbertSpace::boson(2), 0), {1}),
                    UnsupportedStatisticsError);
}

TEST_CASE("hermitian eigendecomposition") {
    auto ez = eig_hermitian(HermitianOperator(pauli(PauliAxis::z)));
    CHECK(ez.values(0) == doctest::Approx(-1.0));
    CHECK(ez.values(1) == doctest::Approx(1.0));
    auto eh = eig_hermitian(heisenberg(1, 2, 2));
    CHECK(eh.values(0) == doctest::Approx(-3.0));
    for (int k = 1; k < 4; ++k) CHECK(eh.values(k) == doctest::Approx(1.0));
    auto ei = eig_hermitian(HermitianOperator::identity(5));
    for (int k = 0; k < 5; ++k) CHECK(ei.values(k) == doctest::Approx(1.0));

    for (int dim : {2, 3, 7, 16}) {
        const HermitianOperator h(random_hermitian(dim, 100 + dim));
        const auto ed = eig_hermitian(h);
        const ComplexMatrix rebuilt = ed.vectors * ed.values.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
        CHECK(max_abs(rebuilt - h.matrix()) < 1e-10);
    }
}

TEST_CASE("matrix functions") {
    const auto e0 = matrix_function(HermitianOperator::zero(3), [](double x) { return std::exp(x); });
    CHECK(max_abs(e0.matrix() - ComplexMatrix::Identity(3, 3)) < 1e-15);

    const auto ez = matrix_function(HermitianOperator(pauli(PauliAxis::z)), [](double x) { return std::exp(x); });
    const auto lz = matrix_function(ez, [](double x) { return std::log(x); });
    CHECK(max_abs(lz.matrix() - pauli(PauliAxis::z)) < 1e-12);

    // F2 = diag(2, 0, 0, -2) with qubit 1 slowest and |0> the +1 eigenstate.
    const auto f = collective_z(2) * 0.5;
    const auto ef = matrix_function(f, [](double x) { return std::exp(x); });
    CHECK(ef.matrix()(0, 0).real() == doctest::Approx(std::exp(1.0)));
    CHECK(ef.matrix()(1, 1).real() == doctest::Approx(1.0));
    CHECK(ef.matrix()(2, 2).real() == doctest::Approx(1.0));
    CHECK(ef.matrix()(3, 3).real() == doctest::Approx(std::exp(-1.0)));
    const auto efm = matrix_function(f * -1.0, [](double x) { return std::exp(x); });
    CHECK(efm.matrix()(0, 0).real() == doctest::Approx(std::exp(-1.0)));
    CHECK(efm.matrix()(3, 3).real() == doctest::Approx(std::exp(1.0)));

    CHECK_THROWS_AS(matrix_function(HermitianOperator(pauli(PauliAxis::z)), [](double x) { return std::log(x); }),
                    DomainError);
}

TEST_CASE("commutators") {
    const ComplexMatrix c = commutator(pauli(PauliAxis::x), pauli(PauliAxis::y));
    CHECK(max_abs(c - Complex(0, 2) * pauli(PauliAxis::z)) < 1e-15);
    const auto h = HermitianOperator(random_hermitian(4, 3));
    CHECK(max_abs(commutator(h, h)) < 1e-15);
    const auto sx = pauli_on_site(PauliAxis::x, 1, 2) + pauli_on_site(PauliAxis::x, 2, 2);
    const auto sy = pauli_on_site(PauliAxis::y, 1, 2) + pauli_on_site(PauliAxis::y, 2, 2);
    const auto sz = pauli_on_site(PauliAxis::z, 1, 2) + pauli_on_site(PauliAxis::z, 2, 2);
    CHECK(max_abs(commutator(sx, sy) - Complex(0, 2) * sz.matrix()) < 1e-14);
}

TEST_CASE("operator builders") {
    CHECK(max_abs(pauli_on_site(PauliAxis::z, 1, 1).matrix() - pauli(PauliAxis::z)) == 0.0);
    ComplexMatrix z1 = ComplexMatrix::Zero(4, 4);
    z1.diagonal() << 1, 1, -1, -1;
    CHECK(max_abs(pauli_on_site(PauliAxis::z, 1, 2).matrix() - z1) == 0.0);
    CHECK(max_abs(pauli_on_site(PauliAxis::x, 2, 2).matrix() -
                  tensor(ComplexMatrix::Identity(2, 2), pauli(PauliAxis::x))) == 0.0);
    CHECK_THROWS_AS(pauli_on_site(PauliAxis::x, 3, 2), InvalidArgumentError);

    const auto h7 = heisenberg(1, 2, 2);
    CHECK(std::abs(h7.trace()) < 1e-15);
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    CHECK(max_abs(commutator(h7.matrix(), swap)) < 1e-15);

    CHECK(collective_z(2).matrix().diagonal().real().isApprox(RealVector{{2.0, 0.0, 0.0, -2.0}}));
    CHECK(boson_fn_operator(1).matrix().diagonal().real().isApprox(RealVector{{-1.0, 1.0}}));
    CHECK(boson_fn_operator(2).matrix().diagonal().real().isApprox(RealVector{{-2.0, 0.0, 2.0}}));
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(boson_fn_operator(n).trace()) < 1e-15);
}

TEST_CASE("unitary exponential") {
    const ComplexMatrix h = random_hermitian(4, 9);
    const ComplexMatrix u = unitary_exp(h, 0.7);
    CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)) < 1e-12);
    const ComplexMatrix u2 = unitary_exp(pauli(PauliAxis::z), std::numbers::pi / 2);
    CHECK(std::abs(u2(0, 0) - Complex(0, -1)) < 1e-12);
}
