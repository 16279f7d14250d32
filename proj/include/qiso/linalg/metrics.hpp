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

#ifndef QISO_LINALG_METRICS_HPP
#define QISO_LINALG_METRICS_HPP

#include "qiso/linalg/types.hpp"

namespace qiso {

/// PSD square root by Hermitian eigendecomposition. Eigenvalues in [-1e-6, 0) are clamped.
inline CMatrix matrix_sqrt_psd(const CMatrix &m) {
    require(m.rows() == m.cols(), ErrorKind::DimensionMismatch, "matrix_sqrt_psd needs a square matrix");
    require(is_hermitian(m, 1e-8), ErrorKind::InvalidArgument, "matrix_sqrt_psd needs a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    require(ev.minCoeff() >= -1e-6, ErrorKind::NotPositive,
            "matrix_sqrt_psd: eigenvalue " + std::to_string(ev.minCoeff()) + " < -1e-6");
    // Eigenvalues at rounding-noise level are set to zero; their square roots would otherwise
    // inject ~1e-8 errors into rank-deficient inputs.
    double cut = 1e-14 * std::max(1.0, std::abs(ev.maxCoeff()));
    Eigen::VectorXd s(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        s(i) = ev(i) <= cut ? 0.0 : std::sqrt(ev(i));
    }
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

/// Tr|A| for Hermitian A.
inline double trace_norm_hermitian(const CMatrix &a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

/// Tr|A| for a general square matrix (sum of singular values).
inline double trace_norm(const CMatrix &a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().sum();
}

/// Tr sqrt(A) for PSD A (eigenvalues clamped at 0).
inline double trace_sqrt_psd(const CMatrix &a) {
    CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
        s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
    return s;
}

/// Tr|sqrt(A) sqrt(B)| for PSD matrices of any trace, as the nuclear norm of sqrt(A) sqrt(B).
inline double sqrt_fidelity_matrix(const CMatrix &a, const CMatrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::DimensionMismatch,
            "fidelity dimension mismatch");
    return trace_norm(matrix_sqrt_psd(a) * matrix_sqrt_psd(b));
}

inline double sqrt_fidelity(const DensityMatrix &r, const DensityMatrix &s) {
    return sqrt_fidelity_matrix(r.matrix(), s.matrix());
}

/// Square-root fidelity against a pure state, sqrt(<psi|s|psi>).
inline double sqrt_fidelity(const StateVector &psi, const DensityMatrix &s) {
    require(psi.dim() == s.dim(), ErrorKind::DimensionMismatch, "fidelity dimension mismatch");
    double v = psi.amplitudes().dot(s.matrix() * psi.amplitudes()).real();
    return std::sqrt(std::max(0.0, v));
}

inline double trace_distance(const DensityMatrix &r, const DensityMatrix &s) {
    require(r.dim() == s.dim(), ErrorKind::DimensionMismatch, "trace_distance dimension mismatch");
    return 0.5 * trace_norm_hermitian(r.matrix() - s.matrix());
}

}  // namespace qiso

#endif
