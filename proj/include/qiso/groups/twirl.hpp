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

#ifndef QISO_GROUPS_TWIRL_HPP
#define QISO_GROUPS_TWIRL_HPP

#include "qiso/groups/rep.hpp"
#include "qiso/linalg/metrics.hpp"

namespace qiso {

constexpr uint64_t kMaxTwirlOrder = uint64_t{1} << 20;

inline CMatrix conjugate_by(const GroupRep &rep, uint64_t g, const CMatrix &m) {
    CMatrix u = rep.matrix(g);
    return u * m * u.adjoint();
}

/// E(rho) = (1/|G|) sum_g R(g) rho R(g)^dag, summed in element order.
inline CMatrix twirl_matrix(const GroupRep &rep, const CMatrix &rho) {
    require(rep.dim() == rho.rows(), ErrorKind::DimensionMismatch, "twirl dimension mismatch");
    require(rep.order() <= kMaxTwirlOrder, ErrorKind::TooLarge, "group too large to twirl");
    CMatrix acc = CMatrix::Zero(rho.rows(), rho.cols());
    for (uint64_t g = 0; g < rep.order(); g++) {
        acc += conjugate_by(rep, g, rho);
    }
    return acc / static_cast<double>(rep.order());
}

inline DensityMatrix twirl(const GroupRep &rep, const DensityMatrix &rho) {
    CMatrix m = twirl_matrix(rep, rho.matrix());
    return DensityMatrix::trusted(rho.n_qubits(), (m + m.adjoint()) / 2.0);
}

/// (1/|G|) sum_g (R(g) rho R(g)^dag)^{(x)k}.
inline DensityMatrix k_twirl(const GroupRep &rep, const DensityMatrix &rho, int k, uint64_t max_dim = 1024) {
    require(k >= 1, ErrorKind::InvalidArgument, "k_twirl needs k >= 1");
    require(rep.dim() == rho.dim(), ErrorKind::DimensionMismatch, "k_twirl dimension mismatch");
    require(rep.order() <= kMaxTwirlOrder, ErrorKind::TooLarge, "group too large to twirl");
    double dk = std::pow(static_cast<double>(rho.dim()), k);
    require(dk <= static_cast<double>(max_dim), ErrorKind::TooLarge,
            "k_twirl dimension d^k = " + std::to_string(static_cast<uint64_t>(dk)) + " exceeds guard");
    auto D = static_cast<Eigen::Index>(dk);
    CMatrix acc = CMatrix::Zero(D, D);
    for (uint64_t g = 0; g < rep.order(); g++) {
        CMatrix one = conjugate_by(rep, g, rho.matrix());
        CMatrix p = one;
        for (int i = 1; i < k; i++) {
            p = kron(p, one);
        }
        acc += p;
    }
    acc /= static_cast<double>(rep.order());
    return DensityMatrix::trusted(rho.n_qubits() * k, (acc + acc.adjoint()) / 2.0);
}

struct TwirlBoundReport {
    double epsilon = 0;           // max_{U,V in S} F(U rho U^dag, V sigma V^dag)
    size_t argmax_u = 0, argmax_v = 0;
    double twirled_fidelity = 0;  // F(E(rho), E(sigma))
    double bound = 0;             // epsilon * |S|
    double slack = 0;             // bound - twirled_fidelity
    bool holds = false;
};

/// (1/|S|) sum_{U in S} U rho U^dag for an arbitrary finite set of unitaries.
inline CMatrix twirl_set(const std::vector<CMatrix> &set, const CMatrix &rho) {
    require(!set.empty(), ErrorKind::InvalidArgument, "twirl over an empty set");
    CMatrix acc = CMatrix::Zero(rho.rows(), rho.cols());
    for (const CMatrix &u : set) {
        require(u.rows() == rho.rows(), ErrorKind::DimensionMismatch, "twirl dimension mismatch");
        acc += u * rho * u.adjoint();
    }
    acc /= static_cast<double>(set.size());
    return (acc + acc.adjoint()) / 2.0;
}

/// F(E(rho), E(sigma)) <= |S| max_{U,V in S} F(U rho U^dag, V sigma V^dag) for a set S.
inline TwirlBoundReport check_twirl_fidelity_bound(const std::vector<CMatrix> &set, const DensityMatrix &rho,
                                                   const DensityMatrix &sigma) {
    require(rho.dim() == sigma.dim(), ErrorKind::DimensionMismatch, "twirl bound dimension mismatch");
    TwirlBoundReport r;
    r.epsilon = -1;
    std::vector<CMatrix> ur, vs;
    for (const CMatrix &u : set) {
        require(u.rows() == rho.dim() && is_unitary(u), ErrorKind::NotUnitary, "twirl set needs unitaries");
        ur.push_back(u * rho.matrix() * u.adjoint());
        vs.push_back(u * sigma.matrix() * u.adjoint());
    }
    for (size_t a = 0; a < set.size(); a++) {
        for (size_t b = 0; b < set.size(); b++) {
            double f = sqrt_fidelity_matrix(ur[a], vs[b]);
            if (f > r.epsilon) {
                r.epsilon = f;
                r.argmax_u = a;
                r.argmax_v = b;
            }
        }
    }
    r.twirled_fidelity = sqrt_fidelity_matrix(twirl_set(set, rho.matrix()), twirl_set(set, sigma.matrix()));
    r.bound = r.epsilon * static_cast<double>(set.size());
    r.slack = r.bound - r.twirled_fidelity;
    r.holds = r.slack >= -1e-7;
    return r;
}

inline std::vector<CMatrix> group_matrices(const GroupRep &rep) {
    require(rep.order() <= kMaxTwirlOrder, ErrorKind::TooLarge, "group too large to materialize");
    std::vector<CMatrix> out;
    for (uint64_t g = 0; g < rep.order(); g++) {
        out.push_back(rep.matrix(g));
    }
    return out;
}

inline TwirlBoundReport check_twirl_fidelity_bound(const GroupRep &rep, const DensityMatrix &rho,
                                                   const DensityMatrix &sigma) {
    return check_twirl_fidelity_bound(group_matrices(rep), rho, sigma);
}

}  // namespace qiso

#endif
