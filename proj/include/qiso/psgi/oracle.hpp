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

#ifndef QISO_PSGI_ORACLE_HPP
#define QISO_PSGI_ORACLE_HPP

#include "qiso/psgi/instance.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

struct OracleOptions {
    uint64_t max_order = uint64_t{1} << 22;
    int threads = 1;
    // YES when max Re >= beta - yes_slack; absorbs rounding on exact instances.
    double yes_slack = 1e-9;
};

/// Exact maximum of Re and |.| of <psi1|R(g)|psi2> over the whole group. Ties in Re keep the
/// smallest element index. For projective reps each element stands for all its phase multiples, so
/// its Re score is |.| and the reported overlap is that of the phase-aligned representative.
inline PsgiVerdict psgi_oracle(const PsgiInstance &inst, const OracleOptions &opt = {}) {
    inst.validate();
    uint64_t G = inst.rep->order();
    require(G <= opt.max_order, ErrorKind::TooLarge,
            "group order " + std::to_string(G) + " exceeds oracle cap " + std::to_string(opt.max_order));
    std::vector<Complex> ov(G);
    const bool proj = inst.rep->projective();
    parallel_for(G, opt.threads, [&](uint64_t g) {
        ov[g] = group_overlap(inst, g);
        if (proj) {
            ov[g] = std::abs(ov[g]);
        }
    });
    uint64_t best = 0;
    double max_abs = 0;
    uint64_t best_abs = 0;
    for (uint64_t g = 0; g < G; g++) {
        if (ov[g].real() > ov[best].real()) {
            best = g;
        }
        if (std::abs(ov[g]) > max_abs) {
            max_abs = std::abs(ov[g]);
            best_abs = g;
        }
    }
    PsgiVerdict v;
    v.achieved_overlap = ov[best];
    v.diagnostics["max_re"] = ov[best].real();
    v.diagnostics["max_abs"] = max_abs;
    v.diagnostics["argmax_abs"] = inst.rep->label(best_abs);
    v.diagnostics["group_order"] = G;
    v.diagnostics["mode"] = "oracle";
    if (ov[best].real() >= inst.thresholds.beta - opt.yes_slack) {
        v.decision = Decision::Yes;
        v.witness = best;
        v.witness_label = inst.rep->label(best);
    } else if (max_abs <= inst.thresholds.alpha) {
        v.decision = Decision::No;
    } else {
        v.decision = Decision::PromiseViolated;
        v.witness = best;
        v.witness_label = inst.rep->label(best);
    }
    return v;
}

/// Searches only a subgroup (for groups too large to enumerate). Can certify YES; a failed search
/// is not a NO certificate and raises Unsupported.
inline PsgiVerdict psgi_oracle_subgroup(const StateVector &psi1, const StateVector &psi2, const GroupRep &sub,
                                        const DecisionThresholds &thr, const OracleOptions &opt = {}) {
    require(psi1.dim() == sub.dim() && psi2.dim() == sub.dim(), ErrorKind::DimensionMismatch,
            "subgroup dimension mismatch");
    uint64_t G = sub.order();
    require(G <= opt.max_order, ErrorKind::TooLarge, "subgroup too large");
    auto score = [&](uint64_t g) {
        Complex o = psi1.amplitudes().dot(sub.apply(g, psi2.amplitudes()));
        return sub.projective() ? Complex(std::abs(o)) : o;
    };
    uint64_t best = 0;
    Complex best_ov = score(0);
    for (uint64_t g = 1; g < G; g++) {
        Complex o = score(g);
        if (o.real() > best_ov.real()) {
            best_ov = o;
            best = g;
        }
    }
    require(best_ov.real() >= thr.beta - opt.yes_slack, ErrorKind::Unsupported,
            "cannot certify NO: group is not enumerable and the " + sub.name() +
                " subgroup reaches only Re = " + std::to_string(best_ov.real()));
    PsgiVerdict v;
    v.decision = Decision::Yes;
    v.witness = best;
    v.witness_label = sub.label(best);
    v.achieved_overlap = best_ov;
    v.diagnostics["mode"] = "oracle_subgroup";
    v.diagnostics["subgroup"] = sub.name();
    v.diagnostics["max_re"] = best_ov.real();
    return v;
}

}  // namespace qiso

#endif
