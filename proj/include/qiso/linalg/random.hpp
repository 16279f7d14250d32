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

#ifndef QISO_LINALG_RANDOM_HPP
#define QISO_LINALG_RANDOM_HPP

#include <random>

#include "qiso/linalg/types.hpp"

namespace qiso {

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the i-th independent stream derived from a base seed.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

inline Complex complex_normal(Rng &rng, double sigma = 1.0) {
    // Each component has variance sigma^2/2, so E|z|^2 = sigma^2.
    std::normal_distribution<double> nd(0.0, sigma / std::sqrt(2.0));
    double re = nd(rng);
    double im = nd(rng);
    return {re, im};
}

inline CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; j++) {
        for (Eigen::Index i = 0; i < rows; i++) {
            g(i, j) = complex_normal(rng);
        }
    }
    return g;
}

/// Haar unitary: QR of a Ginibre matrix with Q multiplied by diag(R_ii/|R_ii|).
inline CMatrix haar_unitary_matrix(Eigen::Index d, Rng &rng) {
    CMatrix z = ginibre(d, d, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; i++) {
        Complex rii = r(i, i);
        double a = std::abs(rii);
        Complex ph = a > 0 ? rii / a : Complex(1.0);
        q.col(i) *= ph;
    }
    return q;
}

inline StateVector haar_state(int n_qubits, Rng &rng) {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    CVector v(d);
    for (Eigen::Index i = 0; i < d; i++) {
        v(i) = complex_normal(rng);
    }
    return StateVector::normalized(n_qubits, std::move(v));
}

/// Random density matrix G G^dag / Tr, with G a d x rank Ginibre matrix. rank <= 0 means full rank.
inline DensityMatrix random_density_matrix(int n_qubits, Rng &rng, int rank = 0) {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    Eigen::Index k = rank <= 0 ? d : rank;
    CMatrix g = ginibre(d, k, rng);
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = (m + m.adjoint()) / 2.0;
    return DensityMatrix::trusted(n_qubits, std::move(m));
}

}  // namespace qiso

#endif
