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

#include <map>

#include "qiso/groups/spec.hpp"
#include "qiso/psgi/oracle.hpp"
#include "qiso/reductions/bqp.hpp"
#include "qiso/reductions/gi_clifford.hpp"
#include "qiso/reductions/lowrank_gi.hpp"
#include "qiso/reductions/mixed.hpp"

using namespace qiso;

namespace {

Graph path3_swapped() {
    // P3 = 0-1-2 with vertices 0 and 1 swapped: 1-0-2.
    Graph g(3);
    g.add_edge(1, 0);
    g.add_edge(0, 2);
    return g;
}

Graph graph_of(int n, std::vector<std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

std::vector<int> random_perm(int n, Rng &rng) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST(GiClifford, IdenticalPathsUseIdentity) {
    Graph p3 = Graph::path(3);
    auto r = gi_to_clifford(p3, p3);
    EXPECT_FALSE(r.rejected);
    EXPECT_EQ(r.n_qubits(), 4);
    EXPECT_NEAR(r.psi1.amplitudes().norm(), 1, 1e-12);
    auto iso = find_isomorphism(p3, p3);
    ASSERT_TRUE(iso);
    auto w = gi_witness_permutation(*iso);
    EXPECT_EQ(w, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_NEAR(std::abs(clifford_overlap(r.psi1, CliffordElement::permutation(w), r.psi2) - Complex(1)), 0, 1e-9);
}

TEST(GiClifford, RelabeledPathUsesPermutation) {
    Graph p3 = Graph::path(3);
    Graph g2 = p3.relabel({1, 0, 2});
    ASSERT_EQ(g2, path3_swapped());
    auto r = gi_to_clifford(p3, g2);
    auto iso = find_isomorphism(p3, g2);
    ASSERT_TRUE(iso);
    auto w = gi_witness_permutation(*iso);
    EXPECT_EQ(w[0], 0);
    CliffordElement c = CliffordElement::permutation(w);
    EXPECT_TRUE(is_qubit_permutation(c).has_value());
    Complex ov = clifford_overlap(r.psi1, c, r.psi2);
    EXPECT_NEAR(std::abs(ov - Complex(1)), 0, 1e-9);
    EXPECT_NEAR(std::abs(r.psi1.amplitudes().dot(permute_qubits(r.psi2.amplitudes(), w)) - Complex(1)), 0, 1e-9);
    // Swapping the path ends is an automorphism: the target permutation (1 3) also reaches 1.
    Graph ends = p3.relabel({2, 1, 0});
    EXPECT_EQ(ends, p3);
    auto re = gi_to_clifford(p3, ends);
    Complex ov13 = clifford_overlap(re.psi1, CliffordElement::permutation({0, 3, 2, 1}), re.psi2);
    EXPECT_NEAR(std::abs(ov13 - Complex(1)), 0, 1e-9);
    // Without the permutation the states differ.
    EXPECT_LT(std::abs(r.psi1.amplitudes().dot(r.psi2.amplitudes())), 0.99999);
}

TEST(GiClifford, NonIsomorphicPathAndStarStayBelowThreshold) {
    Graph p4 = Graph::path(4), star = Graph::star(3);
    ASSERT_EQ(p4.edge_count(), star.edge_count());
    auto r = gi_to_clifford(p4, star);
    ASSERT_FALSE(r.rejected);
    auto rep = sample_clifford_overlaps(r.psi1, r.psi2, 100000, 2024, 0.99999);
    EXPECT_EQ(rep.above, 0u);
    EXPECT_LT(rep.max_abs, 0.99999);
    // Permutations alone (a superset of what could work) also fail.
    auto fq = verify_first_qubit_claim({r});
    EXPECT_EQ(fq.above_threshold, 0u);
}

TEST(GiClifford, MismatchedGraphsGiveNoArtifact) {
    auto r = gi_to_clifford(Graph::path(3), Graph::path(4));
    EXPECT_TRUE(r.rejected);
    EXPECT_EQ(r.reject_reason, "vertex counts differ");
    EXPECT_EQ(psgi_oracle(r.instance()).decision, Decision::No);
    auto e = gi_to_clifford(Graph::path(3), Graph::complete(3));
    EXPECT_TRUE(e.rejected);
    EXPECT_EQ(e.reject_reason, "edge counts differ");
}

TEST(GiClifford, OracleOnSmallestInstances) {
    // One vertex: two qubits, C_2 enumerable.
    auto r = gi_to_clifford(Graph(1), Graph(1));
    auto v = psgi_oracle(r.instance());
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_NEAR(v.achieved_overlap.real(), 1, 1e-9);
    auto w = psgi_oracle_subgroup(r.psi1, r.psi2, PermutationRep(2), r.thresholds);
    EXPECT_EQ(w.decision, Decision::Yes);
}

TEST(GiClifford, CompletenessOnRandomRelabelings) {
    Rng rng(31);
    for (int n = 1; n <= 5; n++) {
        for (const Graph &g : all_graphs(n)) {
            auto p = random_perm(n, rng);
            Graph h = g.relabel(p);
            auto iso = find_isomorphism(g, h);
            ASSERT_TRUE(iso);
            auto r = gi_to_clifford(g, h);
            auto w = gi_witness_permutation(*iso);
            double re = r.psi1.amplitudes().dot(permute_qubits(r.psi2.amplitudes(), w)).real();
            EXPECT_NEAR(re, 1.0, 1e-9);
        }
    }
}

TEST(LemmaPerm, ExhaustiveSmallN) {
    auto r1 = verify_lemma_perm(1, "exhaustive", 0, 0);
    EXPECT_EQ(r1.examined, 24u);
    EXPECT_EQ(r1.violations, 0u);
    EXPECT_EQ(r1.above_threshold, 1u);
    EXPECT_DOUBLE_EQ(r1.permutation_fraction(), 1.0);
    auto r2 = verify_lemma_perm(2, "exhaustive", 0, 0);
    EXPECT_EQ(r2.examined, 11520u);
    EXPECT_EQ(r2.violations, 0u);
    EXPECT_EQ(r2.above_threshold, 2u);  // identity and SWAP
    EXPECT_LT(r2.max_non_permutation, kLemmaPermThreshold);
}

TEST(LemmaPerm, SampledThreeQubits) {
    auto r = verify_lemma_perm(3, "sampled", 20000, 5);
    EXPECT_EQ(r.examined, 20000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_DOUBLE_EQ(r.permutation_fraction(), 1.0);
    EXPECT_THROW(verify_lemma_perm(3, "bogus", 1, 1), Error);
}

TEST(FirstQubitClaim, Examples) {
    Graph p3 = Graph::path(3);
    auto iso_inst = gi_to_clifford(p3, p3.relabel({2, 0, 1}));
    auto rep = verify_first_qubit_claim({iso_inst, gi_to_clifford(p3, p3)});
    EXPECT_EQ(rep.instances, 2u);
    EXPECT_EQ(rep.permutations_checked, 48u);
    EXPECT_GE(rep.above_threshold, 2u);
    EXPECT_EQ(rep.control_moved_above, 0u);
    // A permutation that moves the control scores below the threshold.
    auto r = gi_to_clifford(p3, p3);
    double v = std::abs(r.psi1.amplitudes().dot(permute_qubits(r.psi2.amplitudes(), {1, 0, 2, 3})));
    EXPECT_LT(v, 0.99999);
    EXPECT_LT(rep.max_overlap_moving_control, 0.99999);
}

TEST(StabilizerGadget, RankTwoFidelityDecays) {
    Rng rng(41);
    std::vector<double> means;
    for (int n = 1; n <= 6; n++) {
        CVector r = r_state_product(n).amplitudes();
        double total = 0;
        const int samples = 300;
        for (int t = 0; t < samples; t++) {
            CVector s1 = random_clifford(n, rng).zero_image(), s2 = random_clifford(n, rng).zero_image();
            CVector mix = complex_normal(rng) * s1 + complex_normal(rng) * s2;
            mix.normalize();
            total += std::abs(r.dot(mix));
        }
        means.push_back(total / samples);
    }
    for (size_t i = 1; i < means.size(); i++) {
        EXPECT_LT(means[i], means[i - 1]) << "n=" << i + 1;
    }
}

TEST(MState, ThreeQubitConstants) {
    auto g = term_gram(m_state_terms(3));
    EXPECT_NEAR(g.sum().real(), 6.0, 1e-12);
    EXPECT_NEAR(m_state_constant(3), 1 / std::sqrt(6.0), 1e-12);
    LowRankState m = build_m_state(3);
    EXPECT_EQ(m.terms().size(), 3u);
    EXPECT_EQ(m.rank_bound(), 12);
    EXPECT_EQ(m.expanded_rank(), 12);
    CVector v = m.materialize();
    EXPECT_NEAR(v.norm(), 1, 1e-12);
    for (uint64_t e : {4u, 2u, 1u}) {
        EXPECT_NEAR(std::abs(v(static_cast<Eigen::Index>(e))), 1 / std::sqrt(6.0), 1e-12);
    }
    EXPECT_THROW(build_m_state(1), Error);
}

TEST(MState, XOverlapDecays) {
    StateVector m = build_m_state(8).state();
    double x = std::abs(pauli_expectation(m, PauliOp::single(8, 0, 'X')));
    double z = std::abs(pauli_expectation(m, PauliOp::single(8, 0, 'Z')));
    EXPECT_LT(x, z);
    // Hamming-weight-two amplitudes are smaller than weight-one amplitudes.
    StateVector m5 = build_m_state(5).state();
    EXPECT_GT(std::abs(m5.amplitudes()(16)), std::abs(m5.amplitudes()(24)));
}

TEST(LowRankGi, CompletenessAndCoefficients) {
    Rng rng(43);
    for (int n = 2; n <= 5; n++) {
        for (int t = 0; t < 20; t++) {
            Graph g(n);
            for (int u = 0; u < n; u++) {
                for (int v = u + 1; v < n; v++) {
                    if (rng() & 1) {
                        g.add_edge(u, v);
                    }
                }
            }
            auto p = random_perm(n, rng);
            Graph h = g.relabel(p);
            auto inst = lowrank_gi_instance(g, h);
            ASSERT_FALSE(inst.rejected);
            EXPECT_NEAR(inst.b1, std::min(0.1, std::pow(n, -11.0)), 0);
            EXPECT_NEAR(inst.a1, inst.a2, 1e-12);
            EXPECT_LE(inst.psi1.expanded_rank(), inst.psi1.rank_bound());
            auto iso = find_isomorphism(h, g);
            ASSERT_TRUE(iso);
            // permute_qubits(.., iso) maps |h> to |g>.
            CVector img = permute_qubits(inst.psi2.materialize(), *iso);
            EXPECT_NEAR(overlap_defect(inst.psi1.materialize(), img), 0.0, 1e-9);
        }
    }
}

TEST(LowRankGi, SoundnessSamplingOnNonIsomorphicPairs) {
    std::vector<std::pair<Graph, Graph>> lib{{Graph::path(4), Graph::star(3)},
                                             {graph_of(4, {{0, 1}, {2, 3}}), graph_of(4, {{0, 1}, {1, 2}})}};
    for (const auto &[g1, g2] : lib) {
        auto inst = lowrank_gi_instance(g1, g2);
        ASSERT_FALSE(inst.rejected);
        auto rep = sample_lowrank_soundness(inst, 3000, 17);
        EXPECT_EQ(rep.below_threshold, 0u);
        EXPECT_GE(rep.min_defect, inst.defect_threshold());
        // Every permutation without the diagonal part stays above threshold too.
        int n = g1.n();
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double d = overlap_defect(inst.psi1.materialize(), permute_qubits(inst.psi2.materialize(), perm));
            EXPECT_GE(d, inst.defect_threshold());
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto rej = lowrank_gi_instance(Graph::path(3), Graph::path(4));
    EXPECT_TRUE(rej.rejected);
}

TEST(DiagonalClifford, MatchesGateProduct) {
    // s = (1, 2), c01 = 1 is S on q0, Z on q1, CZ.
    DiagonalClifford d{2, {1, 2}, {1}};
    CliffordElement c = CliffordElement::gate(2, GateKind::S, {0}) * CliffordElement::gate(2, GateKind::Z, {1}) *
                        CliffordElement::gate(2, GateKind::CZ, {0, 1});
    CMatrix u = c.to_matrix();
    for (Eigen::Index x = 0; x < 4; x++) {
        EXPECT_NEAR(std::abs(u(x, x) / u(0, 0) - d.phase(static_cast<uint64_t>(x))), 0, 1e-12);
    }
}

TEST(BqpHardness, Examples) {
    Circuit id(2);
    auto rep = std::make_shared<PauliGroupRep>(2);
    auto yes = bqp_hardness_instance(id, id, rep);
    EXPECT_EQ(psgi_oracle(yes.instance).decision, Decision::Yes);
    EXPECT_NEAR(yes.max_phi_zero_overlap, 1.0, 1e-12);

    for (int n = 1; n <= 3; n++) {
        Circuit t(n);
        for (int q = 0; q < n; q++) {
            t.add(GateKind::H, {q}).add(GateKind::T, {q});
        }
        auto inst = bqp_hardness_instance(Circuit(n), t, std::make_shared<PauliGroupRep>(n));
        EXPECT_NEAR(inst.max_phi_zero_overlap, std::pow(2.0, -n / 2.0), 1e-12);
        if (n >= 2) {
            EXPECT_EQ(psgi_oracle(inst.instance).decision, Decision::No);
        }
    }
}

TEST(BqpHardness, RandomCircuitDiagnosticMatchesHaar) {
    auto padded = std::make_shared<PaddedRep>(std::make_shared<PauliGroupRep>(2), 2);
    const int seeds = 300;
    int circ_low = 0, haar_low = 0;
    Rng rng(47);
    for (int s = 0; s < seeds; s++) {
        auto inst = bqp_hardness_instance(Circuit(4), random_brick_circuit(4, 20, static_cast<uint64_t>(s)), padded);
        circ_low += inst.max_phi_zero_overlap < 0.3;
        haar_low += max_group_overlap_with_zero(haar_state(4, rng), *padded) < 0.3;
    }
    double fc = circ_low / double(seeds), fh = haar_low / double(seeds);
    EXPECT_NEAR(fc, fh, 0.12);
    EXPECT_GT(fc, 0.15);
}

TEST(QsdToMsgi, Examples) {
    Rng rng(53);
    DensityMatrix s = random_density_matrix(1, rng);
    auto z2 = std::make_shared<Z2kRep>(1);
    auto same = qsd_to_msgi(s, s, z2, 1);
    EXPECT_GE(same.diagnostics["fidelity_identity"].get<double>(), 1 - 1e-9);
    EXPECT_NEAR(trace_distance(same.sigma0, same.sigma1), 0, 1e-12);

    DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
    DensityMatrix one = DensityMatrix::pure(StateVector::basis(1, 1));
    // One qubit: no concentration, so only the four-term fidelity bound is checked.
    for (int sd = 0; sd < 20; sd++) {
        auto m = qsd_to_msgi(zero, one, z2, static_cast<uint64_t>(sd));
        EXPECT_NEAR(m.diagnostics["mu"].get<double>(), 0.0, 1e-12);
        EXPECT_GE(m.diagnostics["four_term_bound_min_slack"].get<double>(), -1e-9);
    }
    // {I, X} on the first of 4 qubits, sigma1 = |0000>, sigma2 = |1000>: max non-identity fidelity
    // stays within 1/2 + mu/2 + 0.25 on most seeds.
    auto x4 = std::make_shared<PaddedRep>(z2, 3);
    DensityMatrix a = DensityMatrix::pure(StateVector::basis(4, 0));
    DensityMatrix b = DensityMatrix::pure(StateVector::basis(4, 8));
    int within = 0;
    const int seeds = 40;
    for (int sd = 0; sd < seeds; sd++) {
        auto m = qsd_to_msgi(a, b, x4, static_cast<uint64_t>(sd));
        double mu = m.diagnostics["mu"].get<double>();
        EXPECT_NEAR(mu, 0.0, 1e-12);
        EXPECT_GE(m.diagnostics["four_term_bound_min_slack"].get<double>(), -1e-9);
        within += m.diagnostics["max_fidelity_non_identity"].get<double>() <= 0.5 + mu / 2 + 0.25;
    }
    EXPECT_GE(within, seeds * 3 / 4);

    auto triv = qsd_to_msgi(zero, one, trivial_group(1), 3);
    EXPECT_NEAR(trace_distance(triv.sigma0, triv.sigma1), 0.5 * trace_distance(zero, one), 1e-12);
}

TEST(QsdToMixedHsp, Examples) {
    auto z2 = std::make_shared<Z2kRep>(1);
    DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
    DensityMatrix one = DensityMatrix::pure(StateVector::basis(1, 1));
    auto inst = qsd_to_mixed_hsp(zero, one, z2, 1);
    EXPECT_NEAR(std::abs(inst.v1(0) - Complex(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(inst.v2(1) - Complex(1)), 0, 1e-12);
    auto t = transfer_identity(inst);
    EXPECT_NEAR(t.lhs, 2.0, 1e-9);
    EXPECT_NEAR(t.rhs, 2.0, 1e-9);

    auto same = qsd_to_mixed_hsp(zero, zero, z2, 1);
    CMatrix u = same.rep->matrix(1);
    EXPECT_NEAR((u * same.rho.matrix() * u.adjoint() - same.rho.matrix()).norm(), 0, 1e-12);
    EXPECT_NEAR(inst.rep->matrix(1).norm(), (kron(z2->matrix(1), CMatrix::Identity(2, 2))).norm(), 0);
    EXPECT_NEAR((inst.rep->matrix(1) - kron(z2->matrix(1), CMatrix::Identity(2, 2))).norm(), 0, 0);

    auto c4 = std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift);
    EXPECT_THROW(qsd_to_mixed_hsp(zero, one, c4, 1), Error);
    EXPECT_THROW(qsd_to_mixed_hsp(zero, one, z2, 0), Error);
}

TEST(QsdToMixedHsp, TransferIdentityOnRandomTriples) {
    Rng rng(59);
    std::vector<GroupRepPtr> reps{std::make_shared<Z2kRep>(2), std::make_shared<PauliGroupRep>(1),
                                  std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift)};
    for (int t = 0; t < 200; t++) {
        const auto &rep = reps[static_cast<size_t>(t) % reps.size()];
        // Pick an involution other than the identity.
        uint64_t h = 0;
        std::uniform_int_distribution<uint64_t> pick(1, rep->order() - 1);
        do {
            h = pick(rng);
        } while (rep->multiply(h, h) != 0 || (rep->matrix(h) - CMatrix::Identity(rep->dim(), rep->dim())).norm() < 1e-9 ||
                 (rep->matrix(h) + CMatrix::Identity(rep->dim(), rep->dim())).norm() < 1e-9);
        int sys = 1 + t % 2;
        auto s1 = random_density_matrix(sys, rng), s2 = random_density_matrix(sys, rng);
        auto inst = qsd_to_mixed_hsp(s1, s2, rep, h);
        EXPECT_NEAR(inst.v1.dot(inst.v2).real(), 0, 1e-12);
        EXPECT_NEAR((rep->matrix(h) * inst.v1 - inst.v2).norm(), 0, 1e-10);
        auto id = transfer_identity(inst);
        EXPECT_NEAR(id.lhs, id.rhs, 1e-7);
    }
}
