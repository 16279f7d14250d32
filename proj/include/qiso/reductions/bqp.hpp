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

#ifndef QISO_REDUCTIONS_BQP_HPP
#define QISO_REDUCTIONS_BQP_HPP

#include "qiso/linalg/circuit.hpp"
#include "qiso/psgi/instance.hpp"

namespace qiso {

/// PSGI instance psi1 = Q'|0^n>, psi2 = |phi>, plus the diagnostic max_g |<phi|R(g)|0^n>| that the
/// hardness argument needs to be small.
struct BqpHardnessInstance {
    PsgiInstance instance;
    double max_phi_zero_overlap = 0;
    uint64_t argmax = 0;
};

inline double max_group_overlap_with_zero(const StateVector &phi, const GroupRep &rep, uint64_t *argmax = nullptr) {
    require(phi.dim() == rep.dim(), ErrorKind::DimensionMismatch, "state does not match rep");
    CVector zero = StateVector::zeros(phi.n_qubits()).amplitudes();
    double best = -1;
    for (uint64_t g = 0; g < rep.order(); g++) {
        double v = std::abs(phi.amplitudes().dot(rep.apply(g, zero)));
        if (v > best) {
            best = v;
            if (argmax) {
                *argmax = g;
            }
        }
    }
    return best;
}

inline BqpHardnessInstance bqp_hardness_instance(const Circuit &q, const Circuit &phi, GroupRepPtr rep,
                                                 DecisionThresholds thr = {}) {
    require(rep != nullptr, ErrorKind::InvalidArgument, "bqp_hardness_instance needs a group");
    require(q.n_qubits == phi.n_qubits && q.n_qubits == rep->n_qubits(), ErrorKind::DimensionMismatch,
            "circuits and rep must act on the same number of qubits");
    require(rep->order() <= (uint64_t{1} << 22), ErrorKind::TooLarge, "group too large for the diagnostic");
    BqpHardnessInstance out{{run_circuit(q), run_circuit(phi), rep, thr}};
    out.max_phi_zero_overlap = max_group_overlap_with_zero(out.instance.psi2, *rep, &out.argmax);
    return out;
}

}  // namespace qiso

#endif
