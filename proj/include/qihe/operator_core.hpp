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

// Dense complex-matrix foundation: Hilbert spaces, Hermitian operators,
// density matrices and the builders for the spin operators used throughout.
//
// Basis convention: computational basis |q1 q2 ... qN> with qubit 1 slowest,
// |0> is the sigma_z = +1 state. Bosonic spaces use the occupation basis
// |0>..|N>, |n> holding n particles in the sigma_z = +1 level. Qubit and site
// labels are 1-based throughout the public API.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qihe/errors.hpp"

namespace qihe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
    double hermiticity = 1e-12;
    double psd = 1e-10;
    double trace = 1e-10;
    /// Eigenvalues below this are treated as zero where a strictly positive
    /// spectrum is required (pure-limit detection).
    double eigenvalue_floor = 1e-12;
};

enum class Statistics { distinguishable, boson, fermion };

const char* to_string(Statistics s);

class HilbertSpace {
  public:
    /// N distinguishable particles with `local_dim` levels each.
    static HilbertSpace distinguishable(int n_particles, int local_dim = 2);
    /// N bosonic qubits, dimension N + 1.
    static HilbertSpace boson(int n_particles);
    /// Fermionic qubits; only N <= 2 exists (N = 2 is one-dimensional).
    static HilbertSpace fermion(int n_particles);
    /// A single D-level system.
    static HilbertSpace qudit(int dim);

    int n_particles() const { return n_particles_; }
    int local_dim() const { return local_dim_; }
    Statistics statistics() const { return statistics_; }
    int dim() const { return dim_; }

    bool is_qubits() const {
        return statistics_ == Statistics::distinguishable && local_dim_ == 2;
    }

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

  private:
    HilbertSpace(int n, int local, Statistics s, int dim)
        : n_particles_(n), local_dim_(local), statistics_(s), dim_(dim) {}

    int n_particles_;
    int local_dim_;
    Statistics statistics_;
    int dim_;
};

/// Square Hermitian matrix, validated on construction and stored exactly
/// Hermitian.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m, const Tolerances& tol = {});

    static HermitianOperator zero(int dim);
    static HermitianOperator identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;
    friend HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }
    /// H + c I.
    HermitianOperator shifted(double c) const;

  private:
    struct Unchecked {};
    HermitianOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Positive semidefinite unit-trace matrix over a labeled Hilbert space.
class DensityMatrix {
  public:
    DensityMatrix(HilbertSpace space, ComplexMatrix m, const Tolerances& tol = {});
    /// Uses HilbertSpace::qudit(m.rows()).
    explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = {});

    static DensityMatrix maximally_mixed(const HilbertSpace& space);
    /// |k><k| in the computational (or occupation) basis.
    static DensityMatrix basis_state(const HilbertSpace& space, int index);
    static DensityMatrix pure(const HilbertSpace& space, const Eigen::VectorXcd& psi);
    /// diag(p) with p a probability vector.
    static DensityMatrix diagonal(const HilbertSpace& space, std::span<const double> probabilities);

    const HilbertSpace& space() const { return space_; }
    int dim() const { return space_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

    /// Eigenvalues ascending, clipped to [0, inf).
    RealVector spectrum() const;
    DensityMatrix with_space(const HilbertSpace& space) const;

  private:
    HilbertSpace space_;
    ComplexMatrix m_;
};

struct EigenDecomposition {
    RealVector values;    // ascending
    ComplexMatrix vectors; // columns are eigenvectors
};

enum class PauliAxis { x, y, z };

ComplexMatrix pauli(PauliAxis axis);

/// Kronecker product, first operand's index slowest.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the 1-based subsystem labels in `keep` (kept in
/// ascending order). Only distinguishable spaces have a tensor structure.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

EigenDecomposition eig_hermitian(const HermitianOperator& h);
/// Same, for matrices already known to be Hermitian (no validation).
EigenDecomposition eig_hermitian_unchecked(const ComplexMatrix& h);

/// V diag(f(lambda)) V^dagger. Throws DomainError when f is not finite on
/// the spectrum.
HermitianOperator matrix_function(const HermitianOperator& h, const std::function<double(double)>& f);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);

/// exp(-i t H) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& hermitian, double t = 1.0);

/// sigma_axis on `site` (1-based) of an N-qubit register.
HermitianOperator pauli_on_site(PauliAxis axis, int site, int n_qubits);

/// sum_a sigma_a^(j) sigma_a^(k).
HermitianOperator heisenberg(int j, int k, int n_qubits);

/// sum_k sigma_z^(k) on N distinguishable qubits.
HermitianOperator collective_z(int n_qubits);

/// F_N in the bosonic occupation basis: diag(-N, -N+2, ..., N).
HermitianOperator boson_fn_operator(int n_particles);

/// Largest |M - M^dagger| entry.
double hermiticity_residual(const ComplexMatrix& m);

} // namespace qihe
