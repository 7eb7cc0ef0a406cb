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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qihe/oracle.hpp"

namespace qihe_test {

using namespace qihe;

inline constexpr double kLn2 = std::numbers::ln2;

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix random_hermitian(int dim, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, scale);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
    return 0.5 * (g + g.adjoint());
}

inline DensityMatrix bell_phi_plus() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = 1.0;
    return DensityMatrix::pure(HilbertSpace::distinguishable(2), v);
}

inline DensityMatrix werner(double p) {
    const ComplexMatrix m = (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0 + p * bell_phi_plus().matrix();
    return DensityMatrix(HilbertSpace::distinguishable(2), m);
}

inline DensityMatrix qubit_diag(double a) {
    const std::array<double, 2> p{a, 1.0 - a};
    return DensityMatrix::diagonal(HilbertSpace::distinguishable(1), p);
}

} // namespace qihe_test
