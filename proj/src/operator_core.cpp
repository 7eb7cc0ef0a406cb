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

#include "qihe/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qihe {

namespace {

int int_pow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": matrix must be square and non-empty (got " << m.rows() << "x" << m.cols() << ")";
        throw DimensionMismatchError(os.str());
    }
}

void check_hermitian(const ComplexMatrix& m, double tol, const char* what) {
    const double residual = hermiticity_residual(m);
    if (residual > tol * std::max(1.0, max_abs(m))) {
        std::ostringstream os;
        os << what << " invariant violated: Hermitian within tolerance (|M - M^dagger|_max = " << residual << ")";
        throw InvalidOperatorError(os.str());
    }
}

} // namespace

const char* to_string(Statistics s) {
    switch (s) {
    case Statistics::distinguishable: return "distinguishable";
    case Statistics::boson: return "boson";
    case Statistics::fermion: return "fermion";
    }
    return "?";
}

// -- HilbertSpace ------------------------------------------------------------

HilbertSpace HilbertSpace::distinguishable(int n_particles, int local_dim) {
    if (n_particles < 1 || local_dim < 1)
        throw InvalidArgumentError("HilbertSpace: n_particles >= 1 and local_dim >= 1 required");
    if (n_particles * std::log2(static_cast<double>(std::max(local_dim, 2))) > 24)
        throw InvalidArgumentError("HilbertSpace: dimension too large for dense matrices");
    return {n_particles, local_dim, Statistics::distinguishable, int_pow(local_dim, n_particles)};
}

HilbertSpace HilbertSpace::boson(int n_particles) {
    if (n_particles < 1) throw InvalidArgumentError("HilbertSpace: boson requires n_particles >= 1");
    return {n_particles, 2, Statistics::boson, n_particles + 1};
}

HilbertSpace HilbertSpace::fermion(int n_particles) {
    if (n_particles < 1) throw InvalidArgumentError("HilbertSpace: fermion requires n_particles >= 1");
    if (n_particles > 2)
        throw UnsupportedStatisticsError(
            "HilbertSpace: no fermionic qubit system exists for n_particles > 2 with local_dim = 2");
    return {n_particles, 2, Statistics::fermion, n_particles == 1 ? 2 : 1};
}

HilbertSpace HilbertSpace::qudit(int dim) {
    if (dim < 1) throw InvalidArgumentError("HilbertSpace: dim >= 1 required");
    return {1, dim, Statistics::distinguishable, dim};
}

// -- HermitianOperator -------------------------------------------------------

HermitianOperator::HermitianOperator(ComplexMatrix m, const Tolerances& tol) {
    require_square(m, "HermitianOperator");
    check_hermitian(m, tol.hermiticity, "HermitianOperator");
    m_ = hermitian_part(m);
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(ComplexMatrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    if (o.dim() != dim()) throw DimensionMismatchError("HermitianOperator +: dimensions differ");
    return HermitianOperator(m_ + o.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    if (o.dim() != dim()) throw DimensionMismatchError("HermitianOperator -: dimensions differ");
    return HermitianOperator(m_ - o.m_, Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
    return HermitianOperator(m_ * s, Unchecked{});
}

HermitianOperator HermitianOperator::shifted(double c) const {
    ComplexMatrix m = m_;
    m.diagonal().array() += c;
    return HermitianOperator(std::move(m), Unchecked{});
}

// -- DensityMatrix -----------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, ComplexMatrix m, const Tolerances& tol)
    : space_(space) {
    require_square(m, "DensityMatrix");
    if (m.rows() != space.dim()) {
        std::ostringstream os;
        os << "DensityMatrix: matrix dimension " << m.rows() << " does not match space dimension " << space.dim();
        throw DimensionMismatchError(os.str());
    }
    const double herm = hermiticity_residual(m);
    if (herm > tol.hermiticity * std::max(1.0, max_abs(m))) {
        std::ostringstream os;
        os << "density matrix invariant violated: Hermitian within tolerance (residual " << herm << ")";
        throw InvalidDensityMatrixError(os.str());
    }
    m_ = hermitian_part(m);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "density matrix invariant violated: trace = 1 within tolerance (trace = " << tr << ")";
        throw InvalidDensityMatrixError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues()(0);
    if (min_eig < -tol.psd) {
        std::ostringstream os;
        os << "density matrix invariant violated: smallest eigenvalue >= -tolerance (smallest = " << min_eig << ")";
        throw InvalidDensityMatrixError(os.str());
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol)
    : DensityMatrix(HilbertSpace::qudit(static_cast<int>(std::max<Eigen::Index>(m.rows(), 1))), std::move(m), tol) {}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
    return DensityMatrix(space, ComplexMatrix::Identity(space.dim(), space.dim()) / double(space.dim()));
}

DensityMatrix DensityMatrix::basis_state(const HilbertSpace& space, int index) {
    if (index < 0 || index >= space.dim())
        throw InvalidArgumentError("basis_state: index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(space.dim(), space.dim());
    m(index, index) = 1.0;
    return DensityMatrix(space, std::move(m));
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const Eigen::VectorXcd& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw InvalidArgumentError("pure: zero state vector");
    const Eigen::VectorXcd v = psi / n;
    return DensityMatrix(space, v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const HilbertSpace& space, std::span<const double> probabilities) {
    if (static_cast<int>(probabilities.size()) != space.dim())
        throw DimensionMismatchError("diagonal: probability vector length must equal space dimension");
    ComplexMatrix m = ComplexMatrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
    return DensityMatrix(space, std::move(m));
}

RealVector DensityMatrix::spectrum() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0);
}

DensityMatrix DensityMatrix::with_space(const HilbertSpace& space) const {
    return DensityMatrix(space, m_);
}

// -- free functions ----------------------------------------------------------

ComplexMatrix pauli(PauliAxis axis) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (axis) {
    case PauliAxis::x:
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case PauliAxis::y:
        m(0, 1) = Complex(0, -1);
        m(1, 0) = Complex(0, 1);
        break;
    case PauliAxis::z:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    }
    return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const auto& sa = a.space();
    const auto& sb = b.space();
    HilbertSpace space = HilbertSpace::qudit(sa.dim() * sb.dim());
    if (sa.statistics() == Statistics::distinguishable && sb.statistics() == Statistics::distinguishable &&
        sa.local_dim() == sb.local_dim())
        space = HilbertSpace::distinguishable(sa.n_particles() + sb.n_particles(), sa.local_dim());
    return DensityMatrix(space, tensor(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const auto& space = rho.space();
    if (space.statistics() != Statistics::distinguishable)
        throw UnsupportedStatisticsError(std::string("partial_trace: requires distinguishable statistics (got ") +
                                         to_string(space.statistics()) + ")");
    const int n = space.n_particles();
    const int d = space.local_dim();
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) throw InvalidArgumentError("partial_trace: keep list must be non-empty");
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw InvalidArgumentError("partial_trace: keep indices must be distinct");
    if (kept.front() < 1 || kept.back() > n)
        throw InvalidArgumentError("partial_trace: keep indices must lie in [1, n_particles]");

    std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
    for (int k : kept) is_kept[static_cast<std::size_t>(k - 1)] = true;
    std::vector<int> traced;
    for (int s = 1; s <= n; ++s)
        if (!is_kept[static_cast<std::size_t>(s - 1)]) traced.push_back(s);

    const int nk = static_cast<int>(kept.size());
    const int dk = int_pow(d, nk);
    const int dt = int_pow(d, n - nk);

    // Full-register index assembled from kept and traced digit strings.
    auto compose = [&](int kept_idx, int traced_idx) {
        std::vector<int> digits(static_cast<std::size_t>(n));
        for (int i = nk - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)] - 1)] = kept_idx % d;
            kept_idx /= d;
        }
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(traced[static_cast<std::size_t>(i)] - 1)] = traced_idx % d;
            traced_idx /= d;
        }
        int idx = 0;
        for (int dig : digits) idx = idx * d + dig;
        return idx;
    };

    std::vector<int> index(static_cast<std::size_t>(dk * dt));
    for (int a = 0; a < dk; ++a)
        for (int t = 0; t < dt; ++t) index[static_cast<std::size_t>(a * dt + t)] = compose(a, t);

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    const auto& m = rho.matrix();
    for (int a = 0; a < dk; ++a)
        for (int b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (int t = 0; t < dt; ++t)
                acc += m(index[static_cast<std::size_t>(a * dt + t)], index[static_cast<std::size_t>(b * dt + t)]);
            out(a, b) = acc;
        }
    return DensityMatrix(HilbertSpace::distinguishable(nk, d), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
    return eig_hermitian_unchecked(h.matrix());
}

EigenDecomposition eig_hermitian_unchecked(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) throw InvalidOperatorError("eig_hermitian: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

HermitianOperator matrix_function(const HermitianOperator& h, const std::function<double(double)>& f) {
    const auto eig = eig_hermitian(h);
    RealVector fv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        fv(i) = f(eig.values(i));
        if (!std::isfinite(fv(i))) {
            std::ostringstream os;
            os << "matrix_function: function undefined at eigenvalue " << eig.values(i);
            throw DomainError(os.str());
        }
    }
    return HermitianOperator(eig.vectors * fv.asDiagonal() * eig.vectors.adjoint());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DimensionMismatchError("commutator: operands must be square with equal dimensions");
    return a * b - b * a;
}

ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
    return commutator(a.matrix(), b.matrix());
}

ComplexMatrix unitary_exp(const ComplexMatrix& hermitian, double t) {
    const auto eig = eig_hermitian_unchecked(hermitian);
    Eigen::VectorXcd phases(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) phases(i) = std::polar(1.0, -t * eig.values(i));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

HermitianOperator pauli_on_site(PauliAxis axis, int site, int n_qubits) {
    if (n_qubits < 1 || site < 1 || site > n_qubits)
        throw InvalidArgumentError("pauli_on_site: site must lie in [1, n_qubits]");
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int k = 1; k <= n_qubits; ++k)
        out = tensor(out, k == site ? pauli(axis) : ComplexMatrix::Identity(2, 2));
    return HermitianOperator(std::move(out));
}

HermitianOperator heisenberg(int j, int k, int n_qubits) {
    if (j == k || j < 1 || k < 1 || j > n_qubits || k > n_qubits)
        throw InvalidArgumentError("heisenberg: pair must be two distinct sites in [1, n_qubits]");
    ComplexMatrix acc = ComplexMatrix::Zero(1 << n_qubits, 1 << n_qubits);
    for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z})
        acc += pauli_on_site(axis, j, n_qubits).matrix() * pauli_on_site(axis, k, n_qubits).matrix();
    return HermitianOperator(std::move(acc));
}

HermitianOperator collective_z(int n_qubits) {
    if (n_qubits < 1) throw InvalidArgumentError("collective_z: n_qubits >= 1 required");
    HermitianOperator acc = HermitianOperator::zero(1 << n_qubits);
    for (int k = 1; k <= n_qubits; ++k) acc = acc + pauli_on_site(PauliAxis::z, k, n_qubits);
    return acc;
}

HermitianOperator boson_fn_operator(int n_particles) {
    if (n_particles < 1) throw InvalidArgumentError("boson_fn_operator: N >= 1 required");
    ComplexMatrix m = ComplexMatrix::Zero(n_particles + 1, n_particles + 1);
    for (int n = 0; n <= n_particles; ++n) m(n, n) = 2.0 * n - n_particles;
    return HermitianOperator(std::move(m));
}

double hermiticity_residual(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

} // namespace qihe
