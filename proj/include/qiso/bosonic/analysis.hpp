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

#ifndef QISO_BOSONIC_ANALYSIS_HPP
#define QISO_BOSONIC_ANALYSIS_HPP

#include "qiso/bosonic/action.hpp"

namespace qiso {

/// (1/n) sum_{i,k} V_ik^3, the overlap of the cubic core state with its image.
inline Complex cubic_overlap(const ModeUnitary &v) {
    const CMatrix &m = v.matrix();
    Complex s = 0;
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index k = 0; k < m.cols(); k++) {
            s += m(i, k) * m(i, k) * m(i, k);
        }
    }
    return s / static_cast<double>(m.rows());
}

struct PermutationPhase {
    std::vector<int> perm;       // k_i = argmax_k |V_ik|
    std::vector<Complex> phase;  // V_ik_i / |V_ik_i|
    CMatrix projection;          // T with T_{i,k_i} = phase_i
    double residual = 0;         // ||V - T||_F
    bool collision = false;      // some k_i repeats, so T is not a permutation times a phase
};

/// Projects V to the nearest permutation-times-phase candidate by row-wise argmax.
/// T = P D with P(i, k_i) = 1 and D = diag over columns of the phases.
inline PermutationPhase nearest_permutation_phase(const ModeUnitary &v) {
    const CMatrix &m = v.matrix();
    auto n = m.rows();
    PermutationPhase out;
    out.projection = CMatrix::Zero(n, n);
    std::vector<int> used(static_cast<size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; i++) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < n; k++) {
            if (std::abs(m(i, k)) > std::abs(m(i, best))) {
                best = k;
            }
        }
        double a = std::abs(m(i, best));
        Complex ph = a > 0 ? m(i, best) / a : Complex(1);
        out.perm.push_back(static_cast<int>(best));
        out.phase.push_back(ph);
        out.projection(i, best) = ph;
        if (used[static_cast<size_t>(best)]++) {
            out.collision = true;
        }
    }
    out.residual = (m - out.projection).norm();
    return out;
}

/// Off-diagonal amplitudes of the two-photon sector as a symmetric matrix, scaled so the largest
/// entry has magnitude 1. An encoded graph gives its 0/1 adjacency matrix.
inline CMatrix quadratic_sector_matrix(const CoreState &c) {
    auto n = static_cast<Eigen::Index>(c.n_modes());
    CMatrix a = CMatrix::Zero(n, n);
    for (const auto &[k, amp] : c.amplitudes()) {
        if (photon_count(k) != 2) {
            continue;
        }
        auto modes = expand_modes(k);
        if (modes[0] != modes[1]) {
            a(modes[0], modes[1]) = amp;
            a(modes[1], modes[0]) = amp;
        }
    }
    double mx = a.cwiseAbs().maxCoeff();
    if (mx > 0) {
        a /= mx;
    }
    return a;
}

}  // namespace qiso

#endif
