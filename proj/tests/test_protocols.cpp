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

#include <gtest/gtest.h>

#include <sstream>

#include "qiso/linalg/metrics.hpp"
#include "qiso/protocols/library.hpp"

using namespace qiso;

namespace {

StateVector random_state(int n, uint64_t seed) {
    Rng rng(seed);
    return haar_state(n, rng);
}

template <typename P>
TrialStats trials_of(const P &protocol, uint64_t trials, uint64_t seed) {
    return run_trials([&](uint64_t s) { return protocol.round(s); }, trials, seed);
}

}  // namespace

TEST(Shadows, IdentityOnZeroAlwaysGivesZero) {
    Rng rng(1);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(sample_born(StateVector::basis(2, 0).amplitudes(), rng), 0u);
    }
    ShadowRecord r{CliffordElement::identity(1), 0, 0};
    EXPECT_DOUBLE_EQ(shadow_single_estimate(r, StateVector::basis(1, 0).amplitudes()), 2.0);
}

TEST(Shadows, HadamardMarginalIsFair) {
    CliffordElement h = CliffordElement::gate(1, GateKind::H, {0});
    CVector v = h.apply(StateVector::basis(1, 0).amplitudes());
    Rng rng(5);
    const int shots = 10000;
    int ones = 0;
    for (int i = 0; i < shots; i++) {
        ones += static_cast<int>(sample_born(v, rng));
    }
    EXPECT_NEAR(ones / double(shots), 0.5, 3 * std::sqrt(0.25 / shots));
}

TEST(Shadows, SeedReproducibleAndGuarded) {
    auto psi = random_state(2, 3);
    auto a = clifford_shadow(psi, 20, 7), b = clifford_shadow(psi, 20, 7);
    ASSERT_EQ(a.size(), 20u);
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].bits, b[i].bits);
        EXPECT_TRUE(a[i].clifford == b[i].clifford);
        EXPECT_EQ(a[i].seed, derive_seed(7, i));
        a[i].clifford.validate();
    }
    EXPECT_THROW(clifford_shadow(StateVector::basis(5, 0), 1, 1), Error);
    auto j = to_json(a[0]);
    EXPECT_EQ(j["bits"].get<std::string>().size(), 2u);
}

TEST(Shadows, ExactExpectationOnOneQubit) {
    // Average of the single-shadow estimator over all 24 Cliffords and both outcomes.
    for (uint64_t s = 0; s < 10; s++) {
        auto psi = random_state(1, 100 + s), phi = random_state(1, 200 + s);
        double e = 0;
        for (uint64_t i = 0; i < clifford_count(1); i++) {
            CliffordElement c = clifford_from_index(1, i);
            CVector out = c.apply(psi.amplitudes());
            for (uint64_t b = 0; b < 2; b++) {
                e += std::norm(out(static_cast<Eigen::Index>(b))) *
                     shadow_single_estimate(ShadowRecord{c, b, 0}, phi.amplitudes());
            }
        }
        e /= static_cast<double>(clifford_count(1));
        EXPECT_NEAR(e, std::norm(phi.amplitudes().dot(psi.amplitudes())), 1e-12);
    }
}

TEST(Shadows, MonteCarloUnbiasedOnTwoAndThreeQubits) {
    for (int n : {2, 3}) {
        auto psi = random_state(n, 11), phi = random_state(n, 12);
        auto shadows = clifford_shadow(psi, 20000, 13 + n);
        double s = 0, s2 = 0;
        for (const auto &r : shadows) {
            double x = shadow_single_estimate(r, phi.amplitudes());
            s += x;
            s2 += x * x;
        }
        double m = s / shadows.size();
        double sd = std::sqrt((s2 / shadows.size() - m * m) / shadows.size());
        EXPECT_NEAR(m, std::norm(phi.amplitudes().dot(psi.amplitudes())), 5 * sd) << "n=" << n;
    }
}

TEST(Shadows, FidelityEstimatesConcentrate) {
    StateVector zero = StateVector::basis(1, 0), one = StateVector::basis(1, 1);
    int ok_same = 0, ok_orth = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; s++) {
        auto shadows = clifford_shadow(zero, 2000, derive_seed(55, s));
        auto est = fidelity_from_shadows(shadows, {zero, one});
        ok_same += std::abs(est[0] - 1) <= 0.1;
        ok_orth += std::abs(est[1]) <= 0.1;
    }
    EXPECT_GE(ok_same, 95);
    EXPECT_GE(ok_orth, 95);
    EXPECT_EQ(shadow_bucket_count(2, 2000, 0.05), 2 * static_cast<int>(std::ceil(std::log(80.0))));
    EXPECT_THROW(fidelity_from_shadows(clifford_shadow(zero, 3, 1), {StateVector::basis(2, 0)}), Error);
}

TEST(Qcszk, IsomorphicMessagesAreIdentical) {
    for (const auto &e : qcszk_library()) {
        // One copy of a Pauli-twirled pure state is always I/d; two copies already separate the
        // non-isomorphic instances.
        double one = (qcszk_message_state(e.instance, 1) - qcszk_message_state(e.instance, 2)).norm();
        double two = (qcszk_message_state(e.instance, 1, 2) - qcszk_message_state(e.instance, 2, 2)).norm();
        EXPECT_LT(one, 1e-9) << e.name;
        if (e.isomorphic) {
            EXPECT_LT(two, 1e-9) << e.name;
        } else {
            EXPECT_GT(two, 0.1) << e.name;
        }
    }
}

TEST(Qcszk, NonIsomorphicInstancesAccept) {
    for (const auto &e : qcszk_library()) {
        if (e.isomorphic) {
            continue;
        }
        QcszkProtocol p(e.instance);
        auto s = trials_of(p, 2000, 3);
        EXPECT_GE(s.rate, 0.9) << e.name << " N=" << p.shadows();
    }
}

TEST(Qcszk, IsomorphicInstancesGiveHalf) {
    for (const auto &e : qcszk_library()) {
        if (!e.isomorphic) {
            continue;
        }
        QcszkProtocol p(e.instance);
        auto s = trials_of(p, 10000, 4);
        EXPECT_NEAR(s.rate, 0.5, 0.02) << e.name;
    }
}

TEST(Qcszk, TranscriptsAreConsistentAndReproducible) {
    auto lib = qcszk_library();
    QcszkProtocol p(lib[0].instance, 6);
    p.keep_records = true;
    auto t = p.round(9);
    EXPECT_EQ(t.accept, t.j == t.reply);
    EXPECT_EQ(t.payload["records"].size(), 6u);
    EXPECT_EQ(to_json(t).dump(), to_json(p.round(9)).dump());
    EXPECT_EQ(to_json(qcszk_round(lib[0].instance, 6, 9)).dump(), to_json(QcszkProtocol(lib[0].instance, 6).round(9)).dump());
    EXPECT_EQ(qcszk_default_shadows(16), 26u);
    EXPECT_EQ(qcszk_default_shadows(4), 21u);
}

TEST(QszkMixed, LibraryTraceDistancesAndAcceptance) {
    double far_accept = 0, worst_close_accept = 0;
    for (const auto &e : qszk_mixed_library()) {
        QszkMixedProtocol p(e.instance, e.k);
        const auto &rep = *e.instance.rep;
        double g = static_cast<double>(rep.order());
        // Exact twirled fidelity obeys the k-copy bound.
        double f = sqrt_fidelity_matrix(p.twirled(1), p.twirled(2));
        EXPECT_LE(f, std::min(1.0, std::pow(e.alpha, e.k) * g) + 1e-9) << e.name;
        if (e.isomorphic) {
            EXPECT_LE(p.trace_distance(), 1.0 / 3) << e.name;
            worst_close_accept = std::max(worst_close_accept, p.accept_probability());
        } else {
            EXPECT_LT(std::pow(e.alpha, e.k) * g, 0.1);
            EXPECT_GE(p.accept_probability(), 0.9) << e.name;
            far_accept = p.accept_probability();
        }
        EXPECT_NEAR(p.accept_probability(), 0.5 + 0.5 * p.trace_distance(), 1e-12);
        auto s = trials_of(p, 4000, 8);
        auto ci = wilson_interval(s.accepts, s.trials, 4.0);
        EXPECT_LE(ci.lo, p.accept_probability()) << e.name;
        EXPECT_GE(ci.hi, p.accept_probability()) << e.name;
    }
    EXPECT_GE(far_accept - worst_close_accept, 0.3);
}

TEST(QszkMixed, TrivialGroupEqualStatesIsExactlyHalf) {
    auto lib = qszk_mixed_library();
    const auto &e = lib.back();
    ASSERT_EQ(e.name, "trivial_group_equal_k1");
    QszkMixedProtocol p(e.instance, e.k);
    EXPECT_EQ(p.trace_distance(), 0);
    EXPECT_EQ(p.accept_probability(), 0.5);
    EXPECT_EQ(to_json(qszk_mixed_round(e.instance, 1, 3)).dump(), to_json(p.round(3)).dump());
}

TEST(QszkMixed, NearPairRespectsFidelityBound) {
    for (const auto &e : qszk_mixed_library()) {
        if (e.name != "near_z2_phase_k3") {
            continue;
        }
        QszkMixedProtocol p(e.instance, e.k);
        // D <= sqrt(1 - F^2) with F >= beta^k for the k-copy twirl.
        EXPECT_LE(p.trace_distance(), std::sqrt(1 - std::pow(e.alpha, 2 * e.k)) + 1e-12);
        EXPECT_LE(e.k * (1 - e.alpha), 1.0 / 20 + 1e-12);
    }
}

TEST(SzkLowRank, NonIsomorphicAcceptanceAndGammaSweep) {
    auto lib = szk_lowrank_library();
    const auto &e = lib[0];
    ASSERT_FALSE(e.isomorphic);
    EXPECT_NEAR(e.instance.thresholds.alpha, (1 + 1 / std::sqrt(3.0)) / 2, 1e-9);
    std::vector<double> rates;
    std::vector<uint64_t> ns;
    for (double gamma : {0.01, 0.1, 0.3}) {
        SzkLowRankProtocol p(e.instance, 0, gamma);
        auto s = trials_of(p, 300, 21);
        EXPECT_GE(s.rate, (1 - gamma) * (1 - gamma)) << "gamma=" << gamma << " N=" << p.shadows();
        rates.push_back(s.rate);
        ns.push_back(p.shadows());
    }
    for (size_t i = 1; i < rates.size(); i++) {
        EXPECT_LE(ns[i], ns[i - 1]);
        EXPECT_LE(rates[i], rates[i - 1] + 0.02);
    }
    EXPECT_EQ(szk_lowrank_default_shadows(100, 0.5, 1.0), static_cast<uint64_t>(std::ceil(3 * std::log(200.0))));
}

TEST(SzkLowRank, IsomorphicInstancesGiveHalf) {
    for (const auto &e : szk_lowrank_library()) {
        if (!e.isomorphic) {
            continue;
        }
        SzkLowRankProtocol p(e.instance, 20, 0.1);
        auto s = trials_of(p, 600, 22);
        auto ci = wilson_interval(s.accepts, s.trials, 4.0);
        EXPECT_LE(ci.lo, 0.5) << e.name;
        EXPECT_GE(ci.hi, 0.5) << e.name;
    }
}

TEST(SzkLowRank, GuardsAndRoundFunction) {
    auto lib = szk_lowrank_library();
    auto t = szk_lowrank_round(lib[0].instance, 5, 0.1, 1);
    EXPECT_EQ(t.payload["count"], 5);
    EXPECT_EQ(t.accept, t.j == t.reply);
    LowRankPsgi bad = lib[0].instance;
    bad.thresholds = {0.5, 0.9};
    EXPECT_THROW(SzkLowRankProtocol(bad, 5, 0.1), Error);
    EXPECT_THROW(szk_lowrank_default_shadows(10, 0, 0.5), Error);
}

TEST(RunTrials, FairCoinDeterministicAndReproducible) {
    auto coin = [](uint64_t s) {
        ProtocolTranscript t;
        t.accept = Rng(s)() & 1;
        return t;
    };
    auto s = run_trials(coin, 10000, 1);
    EXPECT_LE(s.ci.lo, 0.5);
    EXPECT_GE(s.ci.hi, 0.5);
    auto always = run_trials([](uint64_t) { return ProtocolTranscript{1, 0, "", {}, 1, true, {}}; }, 50, 2);
    EXPECT_EQ(always.rate, 1.0);
    auto again = run_trials(coin, 10000, 1, 4);
    EXPECT_EQ(again.accepts, s.accepts);
    std::vector<uint64_t> order;
    run_trials(coin, 20, 3, 3, [&](uint64_t i, const ProtocolTranscript &) { order.push_back(i); });
    for (uint64_t i = 0; i < order.size(); i++) {
        EXPECT_EQ(order[i], i);
    }
    std::ostringstream os;
    write_summary_csv(os, {{"coin", s}});
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "instance,trials,accept_rate,ci_lo,ci_hi");
    EXPECT_EQ(to_json(s)["trials"], 10000);
}

TEST(ProtocolLibrary, AcceptanceGapsExceedPointThree) {
    auto gap = [](const std::vector<std::pair<bool, double>> &rates) {
        double lo_far = 1, hi_iso = 0;
        for (auto [iso, r] : rates) {
            (iso ? hi_iso : lo_far) = iso ? std::max(hi_iso, r) : std::min(lo_far, r);
        }
        return lo_far - hi_iso;
    };
    std::vector<std::pair<bool, double>> qc, lr;
    for (const auto &e : qcszk_library()) {
        qc.emplace_back(e.isomorphic, trials_of(QcszkProtocol(e.instance), 1000, 30).rate);
    }
    for (const auto &e : szk_lowrank_library()) {
        lr.emplace_back(e.isomorphic, trials_of(SzkLowRankProtocol(e.instance, 0, 0.1), 200, 31).rate);
    }
    EXPECT_GE(gap(qc), 0.3);
    EXPECT_GE(gap(lr), 0.3);
}
