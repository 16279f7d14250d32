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

#ifndef QISO_REDUCTIONS_GI_CLIFFORD_HPP
#define QISO_REDUCTIONS_GI_CLIFFORD_HPP

#include <optional>

#include "qiso/pauli/states.hpp"
#include "qiso/psgi/instance.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

inline constexpr DecisionThresholds kGiCliffordThresholds{0.99999, 1.0};
inline constexpr double kLemmaPermThreshold = 0.9999;

/// Output of the GI -> Clifford reduction. Pairs with different vertex or edge counts are rejected
/// up front and replaced by a fixed one-qubit NO instance (|0> vs |R>, not Clifford-related).
struct GiCliffordInstance {
    StateVector psi1, psi2;
    DecisionThresholds thresholds = kGiCliffordThresholds;
    bool rejected = false;
    std::string reject_reason;

    int n_qubits() const {
        return psi1.n_qubits();
    }
    /// As a PSGI instance over the enumerable Clifford group (n_qubits <= 2, or 3 with allow_n3).
    PsgiInstance instance(bool allow_n3 = false) const {
        return {psi1, psi2, std::make_shared<CliffordGroupRep>(n_qubits(), allow_n3), thresholds};
    }
};

/// (|R>|R^n> + |R_->|G>)/sqrt2 on n+1 qubits; qubit 0 is the control.
inline StateVector gi_clifford_state(const Graph &g) {
    CVector a = kron(r_state().amplitudes(), r_state_product(g.n()).amplitudes());
    CVector b = kron(r_minus_state().amplitudes(), graph_state(g).amplitudes());
    return StateVector::normalized(g.n() + 1, (a + b) / std::sqrt(2.0));
}

inline GiCliffordInstance gi_to_clifford(const Graph &g1, const Graph &g2) {
    GiCliffordInstance out{StateVector::zeros(1), r_state(), kGiCliffordThresholds, false, ""};
    if (g1.n() != g2.n()) {
        out.rejected = true;
        out.reject_reason = "vertex counts differ";
        return out;
    }
    if (g1.edge_count() != g2.edge_count()) {
        out.rejected = true;
        out.reject_reason = "edge counts differ";
        return out;
    }
    require(g1.n() >= 1 && g1.n() + 1 <= kMaxQubits, ErrorKind::TooLarge, "graph too large for dense states");
    out.psi1 = gi_clifford_state(g1);
    out.psi2 = gi_clifford_state(g2);
    return out;
}

/// Given iso with g1.relabel(iso) == g2, the qubit permutation C on n+1 qubits (control fixed)
/// with C|psi2> = |psi1>.
inline std::vector<int> gi_witness_permutation(const std::vector<int> &iso) {
    std::vector<int> w(iso.size() + 1);
    w[0] = 0;
    for (size_t q = 0; q < iso.size(); q++) {
        w[static_cast<size_t>(iso[q]) + 1] = static_cast<int>(q) + 1;
    }
    return w;
}

inline Complex clifford_overlap(const StateVector &psi1, const CliffordElement &c, const StateVector &psi2) {
    return psi1.amplitudes().dot(c.apply(psi2.amplitudes()));
}

struct CliffordSamplingReport {
    uint64_t samples = 0;
    uint64_t seed = 0;
    double threshold = 0;
    double max_abs = 0;
    uint64_t argmax_sample = 0;
    uint64_t above = 0;
};

/// |<psi1|C|psi2>| for `samples` uniformly random Cliffords; sample i uses derive_seed(seed, i).
inline CliffordSamplingReport sample_clifford_overlaps(const StateVector &psi1, const StateVector &psi2,
                                                       uint64_t samples, uint64_t seed, double threshold,
                                                       int threads = 1) {
    require(psi1.dim() == psi2.dim(), ErrorKind::DimensionMismatch, "state dimension mismatch");
    int n = psi1.n_qubits();
    std::vector<double> vals(samples);
    parallel_for(samples, threads, [&](uint64_t i) {
        vals[i] = std::abs(clifford_overlap(psi1, random_clifford(n, derive_seed(seed, i)), psi2));
    });
    CliffordSamplingReport r{samples, seed, threshold};
    for (uint64_t i = 0; i < samples; i++) {
        if (vals[i] > r.max_abs) {
            r.max_abs = vals[i];
            r.argmax_sample = i;
        }
        r.above += vals[i] >= threshold;
    }
    return r;
}

struct LemmaPermReport {
    int n = 0;
    std::string mode;
    uint64_t examined = 0;
    uint64_t above_threshold = 0;
    uint64_t permutations_above = 0;
    uint64_t violations = 0;
    double max_non_permutation = 0;
    std::string worst_non_permutation;

    double permutation_fraction() const {
        return above_threshold == 0 ? 1.0 : static_cast<double>(permutations_above) / above_threshold;
    }
};

/// Checks that every Clifford with |<R^n|C|R^n>|^2 >= 0.9999 is a qubit permutation.
/// mode "exhaustive" enumerates C_n (n <= 2, or 3 with allow_n3); "sampled" draws `samples`
/// uniform Cliffords.
inline LemmaPermReport verify_lemma_perm(int n, const std::string &mode, uint64_t samples, uint64_t seed,
                                         int threads = 1, bool allow_n3 = false) {
    require(mode == "exhaustive" || mode == "sampled", ErrorKind::InvalidArgument,
            "mode must be exhaustive or sampled");
    require(n >= 1 && n <= 12, ErrorKind::TooLarge, "verify_lemma_perm needs 1 <= n <= 12");
    CVector r = r_state_product(n).amplitudes();
    LemmaPermReport rep;
    rep.n = n;
    rep.mode = mode;
    auto visit = [&](const CliffordElement &c, double v) {
        rep.examined++;
        bool perm = is_qubit_permutation(c).has_value();
        if (!perm && v > rep.max_non_permutation) {
            rep.max_non_permutation = v;
            rep.worst_non_permutation = CliffordGroupRep::describe(c);
        }
        if (v >= kLemmaPermThreshold) {
            rep.above_threshold++;
            rep.permutations_above += perm;
            rep.violations += !perm;
        }
    };
    auto value = [&](const CliffordElement &c) { return std::norm(r.dot(c.apply(r))); };
    if (mode == "exhaustive") {
        enumerate_cliffords(n, [&](uint64_t, const CliffordElement &c) { visit(c, value(c)); },
                            EnumerateOptions{allow_n3});
        return rep;
    }
    const uint64_t chunk = 4096;
    for (uint64_t start = 0; start < samples; start += chunk) {
        uint64_t len = std::min(chunk, samples - start);
        std::vector<double> vals(len);
        std::vector<CliffordElement> cs(len);
        parallel_for(len, threads, [&](uint64_t i) {
            cs[i] = random_clifford(n, derive_seed(seed, start + i));
            vals[i] = value(cs[i]);
        });
        for (uint64_t i = 0; i < len; i++) {
            visit(cs[i], vals[i]);
        }
    }
    return rep;
}

struct FirstQubitReport {
    uint64_t instances = 0;
    uint64_t permutations_checked = 0;
    uint64_t above_threshold = 0;
    uint64_t control_moved_above = 0;
    double max_overlap_moving_control = 0;
};

/// For every qubit permutation reaching |<psi1|C|psi2>| >= 0.99999 on the given instances, checks
/// that the control qubit 0 stays fixed.
inline FirstQubitReport verify_first_qubit_claim(const std::vector<GiCliffordInstance> &instances) {
    FirstQubitReport rep;
    for (const auto &inst : instances) {
        rep.instances++;
        int n = inst.n_qubits();
        require(n <= 8, ErrorKind::TooLarge, "first-qubit check enumerates (n+1)! permutations; n+1 <= 8");
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            rep.permutations_checked++;
            double v = std::abs(inst.psi1.amplitudes().dot(permute_qubits(inst.psi2.amplitudes(), perm)));
            bool moved = perm[0] != 0;
            if (moved) {
                rep.max_overlap_moving_control = std::max(rep.max_overlap_moving_control, v);
            }
            if (v >= inst.thresholds.alpha) {
                rep.above_threshold++;
                rep.control_moved_above += moved;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return rep;
}

}  // namespace qiso

#endif
