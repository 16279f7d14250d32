// Copyright 2026 The qiso Authors
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

#ifndef QISO_LINALG_TYPES_HPP
#define QISO_LINALG_TYPES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qiso/error.hpp"

namespace qiso {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Invariant tolerance and the looser one used for derived identities.
constexpr double kTol = 1e-9;
constexpr double kDerivedTol = 1e-7;
constexpr int kMaxQubits = 26;

inline uint64_t dim_of(int n_qubits) {
    require(n_qubits >= 0 && n_qubits <= kMaxQubits, ErrorKind::TooLarge,
            "qubit count " + std::to_string(n_qubits) + " outside [0, " + std::to_string(kMaxQubits) + "]");
    return uint64_t{1} << n_qubits;
}

/// Returns n such that 2^n == d, or -1.
inline int log2_exact(uint64_t d) {
    if (d == 0 || (d & (d - 1)) != 0) {
        return -1;
    }
    int n = 0;
    while ((uint64_t{1} << n) != d) {
        n++;
    }
    return n;
}

/// Kronecker product; `a` occupies the most significant index bits.
inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline bool is_hermitian(const CMatrix &m, double tol = kTol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const CMatrix &m, double tol = 1e-8) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

/// Normalized pure state on n qubits; qubit 0 is the most significant index bit.
class StateVector {
   public:
    StateVector() : n_(0), amps_(CVector::Ones(1)) {
    }

    StateVector(int n_qubits, CVector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
        require(static_cast<uint64_t>(amps_.size()) == dim_of(n_), ErrorKind::DimensionMismatch,
                "state has " + std::to_string(amps_.size()) + " amplitudes but n_qubits=" + std::to_string(n_));
        double nrm = amps_.norm();
        require(std::abs(nrm - 1.0) <= kTol, ErrorKind::InvalidArgument,
                "state not normalized (norm " + std::to_string(nrm) + ")");
    }

    static StateVector normalized(int n_qubits, CVector amplitudes) {
        double nrm = amplitudes.norm();
        require(nrm > 1e-300 && std::isfinite(nrm), ErrorKind::InvalidArgument, "cannot normalize zero vector");
        amplitudes /= nrm;
        return StateVector(n_qubits, std::move(amplitudes));
    }

    static StateVector basis(int n_qubits, uint64_t index) {
        uint64_t d = dim_of(n_qubits);
        require(index < d, ErrorKind::OutOfRange, "basis index out of range");
        CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return StateVector(n_qubits, std::move(v));
    }

    static StateVector zeros(int n_qubits) {
        return basis(n_qubits, 0);
    }

    int n_qubits() const {
        return n_;
    }
    Eigen::Index dim() const {
        return amps_.size();
    }
    const CVector &amplitudes() const {
        return amps_;
    }
    Complex operator[](Eigen::Index i) const {
        return amps_(i);
    }

   private:
    int n_;
    CVector amps_;
};

/// Hermitian, unit trace, PSD matrix on n qubits.
class DensityMatrix {
   public:
    DensityMatrix() : n_(0), m_(CMatrix::Ones(1, 1)) {
    }

    DensityMatrix(int n_qubits, CMatrix matrix) : n_(n_qubits), m_(std::move(matrix)) {
        validate_shape();
        require(is_hermitian(m_, kTol), ErrorKind::InvalidArgument, "density matrix not Hermitian");
        double mn = Eigen::SelfAdjointEigenSolver<CMatrix>(m_, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        require(mn >= -kTol, ErrorKind::NotPositive, "density matrix has eigenvalue " + std::to_string(mn));
    }

    /// Skips the eigenvalue check. For matrices built as convex mixtures of PSD terms.
    static DensityMatrix trusted(int n_qubits, CMatrix matrix) {
        DensityMatrix r;
        r.n_ = n_qubits;
        r.m_ = std::move(matrix);
        r.validate_shape();
        return r;
    }

    static DensityMatrix pure(const StateVector &psi) {
        return trusted(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
    }

    static DensityMatrix maximally_mixed(int n_qubits) {
        auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
        return trusted(n_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
    }

    int n_qubits() const {
        return n_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }
    const CMatrix &matrix() const {
        return m_;
    }

   private:
    void validate_shape() {
        auto d = static_cast<Eigen::Index>(dim_of(n_));
        require(m_.rows() == d && m_.cols() == d, ErrorKind::DimensionMismatch,
                "density matrix shape does not match n_qubits=" + std::to_string(n_));
        Complex tr = m_.trace();
        require(std::abs(tr - 1.0) <= kTol, ErrorKind::InvalidArgument,
                "density matrix trace " + std::to_string(tr.real()) + " != 1");
    }

    int n_;
    CMatrix m_;
};

class UnitaryMatrix {
   public:
    UnitaryMatrix() : m_(CMatrix::Identity(1, 1)) {
    }
    explicit UnitaryMatrix(CMatrix matrix) : m_(std::move(matrix)) {
        require(m_.rows() == m_.cols() && m_.rows() > 0, ErrorKind::DimensionMismatch, "unitary must be square");
        require(is_unitary(m_), ErrorKind::NotUnitary, "matrix is not unitary within 1e-8");
    }
    static UnitaryMatrix identity(Eigen::Index d) {
        return UnitaryMatrix(CMatrix::Identity(d, d));
    }
    Eigen::Index dim() const {
        return m_.rows();
    }
    const CMatrix &matrix() const {
        return m_;
    }

   private:
    CMatrix m_;
};

inline Complex inner_product(const StateVector &a, const StateVector &b) {
    require(a.dim() == b.dim(), ErrorKind::DimensionMismatch, "inner_product dimension mismatch");
    return a.amplitudes().dot(b.amplitudes());
}

inline StateVector tensor(const StateVector &a, const StateVector &b) {
    return StateVector::normalized(a.n_qubits() + b.n_qubits(), kron(a.amplitudes(), b.amplitudes()));
}

inline DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::trusted(a.n_qubits() + b.n_qubits(), kron(a.matrix(), b.matrix()));
}

inline StateVector tensor_power(const StateVector &a, int k) {
    require(k >= 1, ErrorKind::InvalidArgument, "tensor power needs k >= 1");
    StateVector out = a;
    for (int i = 1; i < k; i++) {
        out = tensor(out, a);
    }
    return out;
}

inline StateVector apply(const UnitaryMatrix &u, const StateVector &psi) {
    require(u.dim() == psi.dim(), ErrorKind::DimensionMismatch, "unitary/state dimension mismatch");
    return StateVector::normalized(psi.n_qubits(), u.matrix() * psi.amplitudes());
}

/// Partial trace of an arbitrary square matrix over the listed qubits.
inline CMatrix partial_trace_matrix(const CMatrix &m, int n_qubits, const std::vector<int> &traced) {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    require(m.rows() == d && m.cols() == d, ErrorKind::DimensionMismatch, "partial_trace shape mismatch");
    std::vector<bool> is_traced(n_qubits, false);
    for (int q : traced) {
        require(q >= 0 && q < n_qubits, ErrorKind::OutOfRange, "traced qubit " + std::to_string(q) + " out of range");
        require(!is_traced[q], ErrorKind::InvalidArgument, "traced qubit " + std::to_string(q) + " listed twice");
        is_traced[q] = true;
    }
    std::vector<int> keep, gone;
    for (int q = 0; q < n_qubits; q++) {
        (is_traced[q] ? gone : keep).push_back(q);
    }
    auto scatter = [&](uint64_t bits, const std::vector<int> &qs) {
        // bits uses qs[0] as its most significant bit.
        uint64_t out = 0;
        int k = static_cast<int>(qs.size());
        for (int i = 0; i < k; i++) {
            if ((bits >> (k - 1 - i)) & 1) {
                out |= uint64_t{1} << (n_qubits - 1 - qs[i]);
            }
        }
        return out;
    };
    uint64_t dk = uint64_t{1} << keep.size();
    uint64_t dt = uint64_t{1} << gone.size();
    std::vector<uint64_t> kidx(dk), tidx(dt);
    for (uint64_t i = 0; i < dk; i++) {
        kidx[i] = scatter(i, keep);
    }
    for (uint64_t t = 0; t < dt; t++) {
        tidx[t] = scatter(t, gone);
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (uint64_t i = 0; i < dk; i++) {
        for (uint64_t j = 0; j < dk; j++) {
            Complex s = 0;
            for (uint64_t t = 0; t < dt; t++) {
                s += m(static_cast<Eigen::Index>(kidx[i] | tidx[t]), static_cast<Eigen::Index>(kidx[j] | tidx[t]));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &traced) {
    CMatrix m = partial_trace_matrix(rho.matrix(), rho.n_qubits(), traced);
    return DensityMatrix::trusted(rho.n_qubits() - static_cast<int>(traced.size()), std::move(m));
}

}  // namespace qiso

#endif
