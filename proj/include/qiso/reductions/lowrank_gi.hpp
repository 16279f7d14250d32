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

#ifndef QISO_REDUCTIONS_LOWRANK_GI_HPP
#define QISO_REDUCTIONS_LOWRANK_GI_HPP

#include "qiso/linalg/random.hpp"
#include "qiso/psgi/instance.hpp"
#include "qiso/reductions/lowrank_state.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

/// Unnormalized terms |R_i R_j 0...0> for i < j.
inline std::vector<StabTerm> m_state_terms(int n) {
    require(n >= 2, ErrorKind::InvalidArgument, "the M state needs n >= 2");
    std::vector<StabTerm> terms;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            StabTerm t;
            for (int q = 0; q < n; q++) {
                t.factors.push_back(StabFactor::of(q == i || q == j ? StabFactor::Kind::R : StabFactor::Kind::Zero));
            }
            terms.push_back(std::move(t));
        }
    }
    return terms;
}

/// Gram matrix <t_a|t_b> of the unit-coefficient terms.
inline CMatrix term_gram(const std::vector<StabTerm> &terms) {
    auto k = static_cast<Eigen::Index>(terms.size());
    std::vector<CVector> vs;
    for (const auto &t : terms) {
        vs.push_back(t.product_vector());
    }
    CMatrix g(k, k);
    for (Eigen::Index a = 0; a < k; a++) {
        for (Eigen::Index b = 0; b < k; b++) {
            g(a, b) = vs[static_cast<size_t>(a)].dot(vs[static_cast<size_t>(b)]);
        }
    }
    return g;
}

/// c_n = (sum_{a,b} Gram_ab)^{-1/2}.
inline double m_state_constant(int n) {
    CMatrix g = term_gram(m_state_terms(n));
    return 1.0 / std::sqrt(g.sum().real());
}

/// |M> = c_n sum_{i<j} |R_i R_j 0...0>, declared stabilizer-rank bound 2n(n-1).
inline LowRankState build_m_state(int n) {
    auto terms = m_state_terms(n);
    double c = m_state_constant(n);
    for (auto &t : terms) {
        t.coeff = c;
    }
    return LowRankState(n, std::move(terms), 2 * n * (n - 1));
}

inline double lowrank_default_b(int n) {
    return std::min(0.1, std::pow(static_cast<double>(n), -11.0));
}

/// psi_i = a_i |M> + b_i |G_i> with b_1 = b_2 = b and a_i solving exact normalization. YES pairs
/// reach overlap 1 under the relabeling permutation; the NO threshold is alpha = 1 - b1 b2 / n.
struct LowRankGiInstance {
    LowRankState psi1, psi2;
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    DecisionThresholds thresholds;
    bool rejected = false;
    std::string reject_reason;

    /// Minimum defect 1 - Re<psi1|C|psi2> that a NO instance must keep.
    double defect_threshold() const {
        return 1.0 - thresholds.alpha;
    }
};

inline LowRankGiInstance lowrank_gi_instance(const Graph &g1, const Graph &g2, double b = -1) {
    LowRankGiInstance out;
    if (g1.n() != g2.n() || g1.edge_count() != g2.edge_count()) {
        out.rejected = true;
        out.reject_reason = g1.n() != g2.n() ? "vertex counts differ" : "edge counts differ";
        out.psi1 = LowRankState(1, {StabTerm{1.0, {StabFactor::of(StabFactor::Kind::Zero)}}});
        out.psi2 = LowRankState(1, {StabTerm{1.0, {StabFactor::of(StabFactor::Kind::R)}}});
        out.thresholds = {0.99999, 1.0};
        return out;
    }
    int n = g1.n();
    require(n >= 2 && n <= 12, ErrorKind::TooLarge, "lowrank_gi_instance needs 2 <= n <= 12");
    if (b < 0) {
        b = lowrank_default_b(n);
    }
    require(b > 0 && b < 1, ErrorKind::InvalidArgument, "b must lie in (0, 1)");
    LowRankState m = build_m_state(n);
    CVector mv = m.materialize();
    auto make = [&](const Graph &g, double &a) {
        double r = mv.dot(graph_state(g).amplitudes()).real();
        // a^2 + b^2 + 2 a b r = 1.
        a = -b * r + std::sqrt(1.0 - b * b * (1.0 - r * r));
        std::vector<StabTerm> terms = m.terms();
        for (auto &t : terms) {
            t.coeff *= a;
        }
        terms.push_back(StabTerm{b, {StabFactor::of_graph(g)}});
        return LowRankState(n, std::move(terms), 2 * n * (n - 1) + 1);
    };
    out.b1 = out.b2 = b;
    out.psi1 = make(g1, out.a1);
    out.psi2 = make(g2, out.a2);
    out.thresholds = {1.0 - out.b1 * out.b2 / n, 1.0};
    return out;
}

/// D|x> = i^{sum s_q x_q} (-1)^{sum_{p<q} c_pq x_p x_q}|x>; every diagonal Clifford has this form
/// up to global phase.
struct DiagonalClifford {
    int n = 0;
    std::vector<int> s;     // Z_4 per qubit
    std::vector<int> c;     // F_2 per pair p < q, row-major over pairs
    static DiagonalClifford random(int n, Rng &rng) {
        DiagonalClifford d{n, {}, {}};
        std::uniform_int_distribution<int> z4(0, 3), z2(0, 1);
        for (int q = 0; q < n; q++) {
            d.s.push_back(z4(rng));
        }
        for (int p = 0; p < n * (n - 1) / 2; p++) {
            d.c.push_back(z2(rng));
        }
        return d;
    }
    bool is_identity() const {
        return std::all_of(s.begin(), s.end(), [](int v) { return v == 0; }) &&
               std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
    }
    Complex phase(uint64_t x) const {
        int k = 0;
        auto bit = [&](int q) { return static_cast<int>((x >> (n - 1 - q)) & 1); };
        size_t idx = 0;
        for (int p = 0; p < n; p++) {
            k += s[static_cast<size_t>(p)] * bit(p);
            for (int q = p + 1; q < n; q++, idx++) {
                k += 2 * c[idx] * bit(p) * bit(q);
            }
        }
        return i_pow(k);
    }
    CVector apply(const CVector &v) const {
        CVector out(v.size());
        for (Eigen::Index x = 0; x < v.size(); x++) {
            out(x) = phase(static_cast<uint64_t>(x)) * v(x);
        }
        return out;
    }
};

/// 1 - Re<a|b> evaluated as |a - b|^2 / 2, which keeps relative precision when a and b agree to
/// within ~1e-8.
inline double overlap_defect(const CVector &a, const CVector &b) {
    return 0.5 * (a - b).squaredNorm();
}

struct LowRankSoundnessReport {
    uint64_t samples = 0;
    uint64_t seed = 0;
    double threshold = 0;
    double min_defect = 0;
    uint64_t argmin_sample = 0;
    uint64_t below_threshold = 0;
};

/// Samples C = U_pi D (random qubit permutation times random diagonal Clifford) and records
/// the defect 1 - Re<psi1|C|psi2>; a NO instance keeps every defect >= b1 b2 / n.
inline LowRankSoundnessReport sample_lowrank_soundness(const LowRankGiInstance &inst, uint64_t samples, uint64_t seed,
                                                       int threads = 1) {
    int n = inst.psi1.n_qubits();
    CVector p1 = inst.psi1.materialize(), p2 = inst.psi2.materialize();
    std::vector<double> vals(samples);
    parallel_for(samples, threads, [&](uint64_t i) {
        Rng rng(derive_seed(seed, i));
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        DiagonalClifford d = DiagonalClifford::random(n, rng);
        vals[i] = overlap_defect(p1, permute_qubits(d.apply(p2), perm));
    });
    LowRankSoundnessReport r{samples, seed, inst.defect_threshold(), std::numeric_limits<double>::infinity()};
    for (uint64_t i = 0; i < samples; i++) {
        if (vals[i] < r.min_defect) {
            r.min_defect = vals[i];
            r.argmin_sample = i;
        }
        r.below_threshold += vals[i] < r.threshold;
    }
    return r;
}

}  // namespace qiso

#endif
