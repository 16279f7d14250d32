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

#ifndef QISO_PSGI_STATEHSP_HPP
#define QISO_PSGI_STATEHSP_HPP

#include "qiso/groups/dihedral.hpp"
#include "qiso/psgi/instance.hpp"

namespace qiso {

/// Applies R(g) to each of the m equal-size tensor factors of v.
inline CVector apply_copies(const GroupRep &rep, uint64_t g, const CVector &v, int m) {
    Eigen::Index d = rep.dim();
    Eigen::Index total = 1;
    for (int i = 0; i < m; i++) {
        total *= d;
    }
    require(v.size() == total, ErrorKind::DimensionMismatch, "apply_copies dimension mismatch");
    CVector out = v;
    Eigen::Index hi = 1;
    for (int c = 0; c < m; c++) {
        Eigen::Index lo = total / (hi * d);
        for (Eigen::Index h = 0; h < hi; h++) {
            for (Eigen::Index l = 0; l < lo; l++) {
                CVector col(d);
                for (Eigen::Index k = 0; k < d; k++) {
                    col(k) = out((h * d + k) * lo + l);
                }
                CVector img = rep.apply(g, col);
                for (Eigen::Index k = 0; k < d; k++) {
                    out((h * d + k) * lo + l) = img(k);
                }
            }
        }
        hi *= d;
    }
    return out;
}

struct StateHspReduction {
    StateVector phi;
    std::shared_ptr<DihedralizedRep> rep;
    int m = 1;
    double epsilon = 0;
    double completeness = 0;         // (1 - eps)^m
    double completeness_linear = 0;  // 1 - m eps
    double soundness = 0;            // alpha^m
    bool bounds_hold = false;
};

/// Reduces PSGI over an abelian linear rep to hidden-subgroup form: the odd elements (h, 1) of the
/// dihedralized group satisfy <Phi|R'(h,1)^{(x)m}|Phi> = (Re <psi1|R(h)|psi2>)^m.
inline StateHspReduction psgi_to_statehsp(const PsgiInstance &inst, int m) {
    inst.validate();
    require(m >= 1 && m <= 8, ErrorKind::InvalidArgument, "m must be in [1, 8]");
    require(m * (inst.psi1.n_qubits() + 1) <= kMaxQubits, ErrorKind::TooLarge, "m-copy register too large");
    StateHspReduction r{tensor_power(controlled_superposition(inst.psi1, inst.psi2), m), dihedralize(inst.rep), m};
    r.epsilon = 1.0 - inst.thresholds.beta;
    r.completeness = std::pow(1.0 - r.epsilon, m);
    r.completeness_linear = 1.0 - m * r.epsilon;
    r.soundness = std::pow(inst.thresholds.alpha, m);
    r.bounds_hold = r.completeness >= r.completeness_linear - 1e-15 && r.soundness < r.completeness;
    return r;
}

inline Complex odd_overlap(const StateHspReduction &r, uint64_t h) {
    uint64_t e = r.rep->index(h, 1);
    return r.phi.amplitudes().dot(apply_copies(*r.rep, e, r.phi.amplitudes(), r.m));
}

}  // namespace qiso

#endif
