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

#ifndef QISO_VERIFY_CHECKS_HPP
#define QISO_VERIFY_CHECKS_HPP

#include <numbers>
#include <numeric>

#include "json.hpp"
#include "qiso/bosonic/analysis.hpp"
#include "qiso/groups/twirl.hpp"
#include "qiso/linalg/random.hpp"
#include "qiso/protocols/shadows.hpp"
#include "qiso/reductions/gi_clifford.hpp"
#include "qiso/reductions/mixed.hpp"
#include "qiso/util/parallel.hpp"

// Seeded property sweeps shared by the CLI verify command and the acceptance binary. Each returns a
// JSON report whose "pass" field summarizes the sweep.

namespace qiso::verify {

using Json = nlohmann::json;

inline Json lemma_perm(int n, bool exhaustive, uint64_t samples, uint64_t seed, int threads, bool allow_n3 = false) {
    LemmaPermReport r = verify_lemma_perm(n, exhaustive ? "exhaustive" : "sampled", samples, seed, threads, allow_n3);
    Json j{{"check", "lemma-perm"},
           {"n", r.n},
           {"mode", r.mode},
           {"threshold", kLemmaPermThreshold},
           {"examined", r.examined},
           {"above_threshold", r.above_threshold},
           {"permutations_above", r.permutations_above},
           {"violations", r.violations},
           {"max_non_permutation", r.max_non_permutation},
           {"worst_non_permutation", r.worst_non_permutation},
           {"pass", r.violations == 0}};
    if (!exhaustive) {
        j["samples"] = samples;
        j["seed"] = seed;
    }
    return j;
}

/// Groups of order <= 16 used by the twirl sweeps.
inline std::vector<GroupRepPtr> small_groups() {
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = -1;
    return {std::make_shared<ExplicitRep>(1, std::vector<CMatrix>{CMatrix::Identity(2, 2), z}, "z2_phase"),
            std::make_shared<PauliGroupRep>(1, false),
            std::make_shared<PauliGroupRep>(1, true),
            std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift),
            std::make_shared<CyclicRep>(8, CyclicRep::Kind::Phase),
            std::make_shared<Z2kRep>(2),
            std::make_shared<PermutationRep>(3),
            std::make_shared<PauliGroupRep>(2, false)};
}

/// F(E(rho), E(sigma)) <= |G| max F on `instances` random pairs; instance i uses derive_seed(seed, i).
inline Json twirl_bound(uint64_t instances, uint64_t seed, int threads) {
    auto groups = small_groups();
    std::vector<std::vector<CMatrix>> mats;
    for (const auto &g : groups) {
        mats.push_back(group_matrices(*g));
    }
    std::vector<TwirlBoundReport> reps(instances);
    parallel_for(instances, threads, [&](uint64_t i) {
        Rng rng(derive_seed(seed, i));
        size_t gi = static_cast<size_t>(i % groups.size());
        int n = groups[gi]->n_qubits();
        int d = static_cast<int>(dim_of(n));
        std::uniform_int_distribution<int> rank(1, d);
        DensityMatrix rho = random_density_matrix(n, rng, rank(rng));
        DensityMatrix sigma = random_density_matrix(n, rng, rank(rng));
        reps[i] = check_twirl_fidelity_bound(mats[gi], rho, sigma);
    });
    double min_slack = 1e300;
    uint64_t worst = 0, failures = 0;
    for (uint64_t i = 0; i < instances; i++) {
        if (reps[i].slack < min_slack) {
            min_slack = reps[i].slack;
            worst = i;
        }
        failures += !reps[i].holds;
    }
    Json names = Json::array();
    for (const auto &g : groups) {
        names.push_back(g->name() + " (order " + std::to_string(g->order()) + ")");
    }
    return Json{{"check", "twirl-bound"}, {"instances", instances}, {"seed", seed},
                {"groups", names},        {"min_slack", min_slack}, {"worst_instance", worst},
                {"failures", failures},   {"pass", failures == 0}};
}

/// k-copy decay F(E_k(rho), E_k(sigma)) <= alpha^k |G| for pure pairs with max_g |<psi1|R(g)|psi2>| = alpha.
/// psi1 is a common eigenvector of the group and psi2 mixes in a component the group keeps orthogonal.
inline Json k_twirl_decay(int max_k = 4) {
    struct Case {
        std::string name;
        GroupRepPtr rep;
        CVector fixed, moved;
    };
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = -1;
    CMatrix x = CMatrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1;
    CVector e0 = CVector::Unit(2, 0), e1 = CVector::Unit(2, 1);
    CVector plus = (e0 + e1) / std::sqrt(2.0), minus = (e0 - e1) / std::sqrt(2.0);
    CVector f0 = CVector::Constant(4, 0.5), f1(4);
    for (int t = 0; t < 4; t++) {
        f1(t) = std::exp(Complex(0, std::numbers::pi * t / 2)) / 2.0;
    }
    std::vector<Case> cases{
        {"z2_phase", std::make_shared<ExplicitRep>(1, std::vector<CMatrix>{CMatrix::Identity(2, 2), z}), e0, e1},
        {"z2_flip", std::make_shared<ExplicitRep>(1, std::vector<CMatrix>{CMatrix::Identity(2, 2), x}), plus, minus},
        {"cyclic4_shift", std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift), f0, f1}};
    Json rows = Json::array();
    double min_slack = 1e300;
    bool pass = true;
    for (const auto &c : cases) {
        for (double alpha : {0.3, 0.6, 0.9}) {
            CVector psi2 = alpha * c.fixed + std::sqrt(1 - alpha * alpha) * c.moved;
            double measured = 0;
            for (uint64_t g = 0; g < c.rep->order(); g++) {
                measured = std::max(measured, std::abs(c.fixed.dot(c.rep->apply(g, psi2))));
            }
            int n = c.rep->n_qubits();
            DensityMatrix rho = DensityMatrix::trusted(n, c.fixed * c.fixed.adjoint());
            DensityMatrix sigma = DensityMatrix::trusted(n, psi2 * psi2.adjoint());
            for (int k = 1; k <= max_k; k++) {
                double f = sqrt_fidelity(k_twirl(*c.rep, rho, k), k_twirl(*c.rep, sigma, k));
                double bound = std::pow(measured, k) * static_cast<double>(c.rep->order());
                double slack = bound - f;
                min_slack = std::min(min_slack, slack);
                bool ok = slack >= -1e-7 && std::abs(measured - alpha) <= 1e-12;
                pass = pass && ok;
                rows.push_back(Json{{"group", c.name}, {"alpha", alpha}, {"k", k}, {"fidelity", f},
                                    {"bound", bound}, {"slack", slack}, {"pass", ok}});
            }
        }
    }
    return Json{{"check", "k-twirl-decay"}, {"cases", rows}, {"min_slack", min_slack}, {"pass", pass}};
}

/// ||rho - R'(h) rho R'(h)^dag||_1 = ||sigma1 - sigma2||_1 on random triples.
inline Json trace_transfer(uint64_t cases, uint64_t seed, double tol = 1e-7) {
    std::vector<GroupRepPtr> reps{std::make_shared<Z2kRep>(2), std::make_shared<PauliGroupRep>(1),
                                  std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift)};
    double max_err = 0;
    uint64_t failures = 0;
    for (uint64_t t = 0; t < cases; t++) {
        Rng rng(derive_seed(seed, t));
        const auto &rep = reps[static_cast<size_t>(t % reps.size())];
        auto d = rep->dim();
        CMatrix id = CMatrix::Identity(d, d);
        std::vector<uint64_t> invol;
        for (uint64_t h = 1; h < rep->order(); h++) {
            CMatrix m = rep->matrix(h);
            if ((m * m - id).norm() < 1e-9 && (m - id).norm() > 1e-9 && (m + id).norm() > 1e-9) {
                invol.push_back(h);
            }
        }
        require(!invol.empty(), ErrorKind::InvalidArgument, "group has no nontrivial involution");
        uint64_t h = invol[std::uniform_int_distribution<size_t>(0, invol.size() - 1)(rng)];
        int sys = 1 + static_cast<int>(t % 2);
        auto s1 = random_density_matrix(sys, rng), s2 = random_density_matrix(sys, rng);
        TransferIdentity id_t = transfer_identity(qsd_to_mixed_hsp(s1, s2, rep, h));
        double err = std::abs(id_t.lhs - id_t.rhs);
        max_err = std::max(max_err, err);
        failures += err > tol;
    }
    return Json{{"check", "trace-transfer"}, {"cases", cases},     {"seed", seed},
                {"tolerance", tol},         {"max_error", max_err}, {"failures", failures},
                {"pass", failures == 0}};
}

/// exp(i eps H) with H a Hermitian Ginibre part.
inline CMatrix unitary_near_identity(int n, double eps, Rng &rng) {
    CMatrix h = ginibre(n, n, rng);
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < n; i++) {
        d(i, i) = std::exp(Complex(0, eps * es.eigenvalues()(i)));
    }
    return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

/// Residual of the nearest permutation-with-phases stays below sqrt(3 n delta) whenever
/// delta = 1 - Re cubic_overlap(V) < 0.38 / n. V = (permutation with cube-root phases) exp(i eps H).
inline Json helper_gapped(uint64_t cases, uint64_t seed, int max_modes = 5) {
    Rng rng(seed);
    std::uniform_int_distribution<int> nd(2, max_modes), third(0, 2);
    std::uniform_real_distribution<double> ed(0.0, 1.0);
    uint64_t checked = 0, drawn = 0, failures = 0;
    double max_ratio = 0;
    while (checked < cases) {
        drawn++;
        require(drawn < 1000 * cases + 1000, ErrorKind::InvalidArgument, "regime rarely reached; check parameters");
        int n = nd(rng);
        std::vector<int> p(static_cast<size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        CMatrix pd = CMatrix::Zero(n, n);
        for (int i = 0; i < n; i++) {
            pd(i, p[static_cast<size_t>(i)]) = std::exp(Complex(0, 2 * std::numbers::pi * third(rng) / 3.0));
        }
        ModeUnitary v(pd * unitary_near_identity(n, ed(rng) / n, rng));
        double delta = 1 - cubic_overlap(v).real();
        if (!(delta < 0.38 / n)) {
            continue;
        }
        checked++;
        auto proj = nearest_permutation_phase(v);
        double bound = std::sqrt(3 * n * std::max(delta, 0.0));
        if (proj.collision || proj.residual > bound + 1e-8) {
            failures++;
        }
        if (bound > 0) {
            max_ratio = std::max(max_ratio, proj.residual / bound);
        }
    }
    return Json{{"check", "helper-gapped-cv"}, {"cases", cases},       {"drawn", drawn},
                {"seed", seed},                {"max_residual_over_bound", max_ratio},
                {"failures", failures},        {"pass", failures == 0}};
}

/// Mean of single-shadow fidelity estimates against |<phi|psi>|^2 for a few targets; passes when
/// every mean is within `z` standard errors.
inline Json shadow_unbiased(int n, uint64_t count, uint64_t seed, double z = 5.0) {
    require(n >= 1 && n <= kMaxShadowQubits, ErrorKind::TooLarge, "shadow check needs 1 <= n <= 4");
    require(count >= 2, ErrorKind::InvalidArgument, "shadow check needs at least two shadows");
    Rng rng(derive_seed(seed, 0));
    StateVector psi = haar_state(n, rng);
    std::vector<std::pair<std::string, CVector>> targets{{"self", psi.amplitudes()},
                                                         {"zero", StateVector::zeros(n).amplitudes()},
                                                         {"haar", haar_state(n, rng).amplitudes()}};
    auto shadows = clifford_shadow(psi, count, derive_seed(seed, 1));
    Json rows = Json::array();
    bool pass = true;
    for (const auto &[name, phi] : targets) {
        double exact = std::norm(phi.dot(psi.amplitudes()));
        double s = 0, s2 = 0;
        for (const auto &r : shadows) {
            double e = shadow_single_estimate(r, phi);
            s += e;
            s2 += e * e;
        }
        double c = static_cast<double>(count);
        double mean = s / c;
        double se = std::sqrt(std::max(s2 / c - mean * mean, 0.0) / (c - 1));
        bool ok = std::abs(mean - exact) <= z * se + 1e-12;
        pass = pass && ok;
        rows.push_back(Json{{"target", name}, {"exact", exact}, {"mean", mean}, {"std_error", se}, {"pass", ok}});
    }
    return Json{{"check", "shadow-unbiased"}, {"n", n}, {"shadows", count}, {"seed", seed}, {"z", z},
                {"targets", rows}, {"pass", pass}};
}

}  // namespace qiso::verify

#endif
