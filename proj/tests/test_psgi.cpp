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

#include "qiso/pauli/states.hpp"
#include "qiso/psgi/generate.hpp"
#include "qiso/psgi/oracle.hpp"
#include "qiso/psgi/pauli_solver.hpp"
#include "qiso/psgi/statehsp.hpp"

using namespace qiso;

namespace {

PsgiInstance pauli_instance(const StateVector &a, const StateVector &b, DecisionThresholds thr = {}) {
    return {a, b, std::make_shared<PauliGroupRep>(a.n_qubits()), thr};
}

StateVector edge_graph_state() {
    Graph g(2);
    g.add_edge(0, 1);
    return graph_state(g);
}

// Literal projector norm ||(1/|G|) sum_x chi(x) rho(x) Phi||^2.
double literal_prob(const StateVector &phi, const PauliGeneratedRep &gamma, uint64_t chi) {
    CVector acc = CVector::Zero(phi.dim());
    for (uint64_t x = 0; x < gamma.order(); x++) {
        double s = f2_dot(chi, x) ? -1.0 : 1.0;
        acc += s * gamma.apply(x, phi.amplitudes());
    }
    acc /= static_cast<double>(gamma.order());
    return acc.squaredNorm();
}

}  // namespace

TEST(PsgiOracle, IdenticalStatesGiveIdentityWitness) {
    auto v = psgi_oracle(pauli_instance(StateVector::zeros(1), StateVector::zeros(1)));
    EXPECT_EQ(v.decision, Decision::Yes);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(*v.witness, 0u);
    EXPECT_NEAR(std::abs(v.achieved_overlap - Complex(1)), 0, 1e-12);
}

TEST(PsgiOracle, BitFlipGivesXWitness) {
    auto inst = pauli_instance(StateVector::zeros(1), StateVector::basis(1, 1));
    auto v = psgi_oracle(inst);
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_EQ(v.witness_label, "+X");
    EXPECT_NEAR(v.achieved_overlap.real(), 1, 1e-12);
}

TEST(PsgiOracle, GraphStateNoInstance) {
    auto inst = pauli_instance(StateVector::zeros(2), edge_graph_state());
    auto v = psgi_oracle(inst);
    EXPECT_EQ(v.decision, Decision::No);
    for (uint64_t g = 0; g < inst.rep->order(); g++) {
        EXPECT_NEAR(std::abs(group_overlap(inst, g)), 0.5, 1e-12);
    }
    EXPECT_EQ(inst.rep->order(), 64u);
}

TEST(PsgiOracle, PromiseViolationAndCap) {
    auto v = psgi_oracle(pauli_instance(StateVector::zeros(1), tensor_power(plus_state(), 1)));
    EXPECT_EQ(v.decision, Decision::PromiseViolated);
    OracleOptions opt;
    opt.max_order = 8;
    try {
        psgi_oracle(pauli_instance(StateVector::zeros(1), tensor_power(plus_state(), 1)), opt);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
    }
    EXPECT_THROW(psgi_oracle(pauli_instance(StateVector::zeros(1), StateVector::zeros(2))), Error);
}

TEST(PsgiOracle, TieBreaksOnLowestIndex) {
    // |0> is fixed by I and Z; both give Re = 1 and I has the lower index.
    auto v = psgi_oracle(pauli_instance(StateVector::zeros(1), StateVector::zeros(1)));
    EXPECT_EQ(*v.witness, 0u);
}

TEST(PsgiOracle, SubgroupSearchCertifiesOnlyYes) {
    PermutationRep perms(2);
    StateVector a = StateVector::basis(2, 1), b = StateVector::basis(2, 2);
    auto v = psgi_oracle_subgroup(a, b, perms, {});
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_EQ(*v.witness, 1u);
    try {
        psgi_oracle_subgroup(StateVector::zeros(2), StateVector::basis(2, 3), perms, {});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
    }
}

TEST(F2Solve, Examples) {
    EXPECT_EQ(f2_solve({}, 5).size(), 5u);
    EXPECT_TRUE(f2_solve({1, 2, 4, 8}, 4).empty());
    EXPECT_TRUE(f2_solve({3, 1, 6, 12, 8}, 4).empty());
    Rng rng(11);
    std::uniform_int_distribution<uint64_t> u(0, 63);
    for (int t = 0; t < 200; t++) {
        std::vector<uint64_t> rows{u(rng), u(rng), u(rng)};
        auto basis = f2_solve(rows, 6);
        EXPECT_EQ(static_cast<int>(basis.size()), 6 - f2_rank(rows, 6));
        EXPECT_EQ(f2_rank(basis, 6), static_cast<int>(basis.size()));
        // Brute-force kernel size equals the span size.
        int count = 0;
        for (uint64_t x = 0; x < 64; x++) {
            bool in = true;
            for (uint64_t r : rows) {
                in = in && f2_dot(r, x) == 0;
            }
            count += in;
        }
        EXPECT_EQ(static_cast<size_t>(count), f2_span(basis).size());
        for (uint64_t b : f2_span(basis)) {
            for (uint64_t r : rows) {
                EXPECT_EQ(f2_dot(b, r), 0);
            }
        }
    }
    EXPECT_THROW(f2_solve({64}, 6), Error);
}

TEST(FourierSampling, DistributionMatchesProjectorFormula) {
    Rng rng(3);
    for (int m : {1, 2}) {
        StateVector a = haar_state(1, rng), b = haar_state(1, rng);
        auto gamma = gamma_group(1, m);
        StateVector phi = build_phi(a, b, m);
        auto dist = character_distribution(phi, *gamma);
        double total = 0;
        for (uint64_t chi = 0; chi < dist.size(); chi++) {
            EXPECT_NEAR(dist[chi], literal_prob(phi, *gamma, chi), 1e-10);
            EXPECT_GE(dist[chi], -1e-12);
            total += dist[chi];
        }
        EXPECT_NEAR(total, 1.0, 1e-8);
    }
}

TEST(FourierSampling, SwapInvariance) {
    Rng rng(4);
    for (int t = 0; t < 10; t++) {
        StateVector a = haar_state(2, rng), b = haar_state(2, rng);
        auto gamma = gamma_group(2, 1);
        auto d1 = character_distribution(build_phi(a, b, 1), *gamma);
        auto d2 = character_distribution(build_phi(b, a, 1), *gamma);
        for (size_t i = 0; i < d1.size(); i++) {
            EXPECT_NEAR(d1[i], d2[i], 1e-10);
        }
    }
}

TEST(FourierSampling, GammaMatchesDihedralizedTwoCopy) {
    auto gamma = gamma_group(2, 1);
    auto dih = dihedralize(two_copy_pauli(2));
    for (uint64_t y = 0; y < 64; y++) {
        for (int a = 0; a < 2; a++) {
            EXPECT_NEAR((gamma->matrix(gamma_label(a, y)) - dih->matrix(dih->index(y, a))).norm(), 0, 1e-12);
        }
    }
}

TEST(FourierSampling, StabilizedStateSamplesOnlyTrivialCharacter) {
    // Phi = |+>^3 is a +1 eigenvector of every element of <X1, X2, X3>.
    std::vector<PauliOp> gens{PauliOp::single(3, 0, 'X'), PauliOp::single(3, 1, 'X'), PauliOp::single(3, 2, 'X')};
    PauliGeneratedRep g("xs", 3, gens);
    StateVector phi = tensor_power(plus_state(), 3);
    for (uint64_t s = 0; s < 50; s++) {
        EXPECT_EQ(fourier_sample(phi, g, s).chi, 0u);
    }
}

TEST(FourierSampling, UniformCase) {
    std::vector<PauliOp> gens{PauliOp::single(2, 0, 'Z'), PauliOp::single(2, 1, 'Z')};
    PauliGeneratedRep g("zs", 2, gens);
    auto dist = character_distribution(tensor_power(plus_state(), 2), g);
    for (double p : dist) {
        EXPECT_NEAR(p, 0.25, 1e-12);
    }
}

TEST(FourierSampling, MarginalsMatchExpectations) {
    Rng srng(5);
    StateVector a = haar_state(1, srng), b = haar_state(1, srng);
    auto gamma = gamma_group(1, 2);
    StateVector phi = build_phi(a, b, 2);
    auto f = involution_expectations(phi, *gamma);
    auto dist = character_distribution(phi, *gamma);
    const int draws = 10000;
    std::vector<int> plus(gamma->order(), 0);
    Rng rng(6);
    for (int t = 0; t < draws; t++) {
        uint64_t chi = fourier_sample(dist, rng).chi;
        for (uint64_t x = 0; x < gamma->order(); x++) {
            plus[x] += f2_dot(chi, x) == 0;
        }
    }
    for (uint64_t x = 0; x < gamma->order(); x++) {
        double p = std::clamp((1 + f[x]) / 2, 0.0, 1.0);
        double sigma = std::sqrt(p * (1 - p) / draws);
        EXPECT_LE(std::abs(plus[x] / double(draws) - p), 3 * sigma + 1e-12) << "x=" << x;
    }
}

TEST(Hadamard, Examples) {
    Rng rng(7);
    StateVector phi = haar_state(3, rng);
    CMatrix id = CMatrix::Identity(8, 8);
    EXPECT_NEAR(hadamard_estimate(phi, id, 0, 1), 1.0, 1e-12);
    PauliOp z = PauliOp::single(1, 0, 'Z');
    EXPECT_NEAR(hadamard_estimate(tensor_power(plus_state(), 1), z.to_matrix(), 0, 1), 0.0, 1e-12);
    PauliOp p = PauliOp::parse("XZY");
    double exact = (phi.amplitudes().dot(p.apply(phi.amplitudes()))).real();
    EXPECT_NEAR(hadamard_estimate(phi, p.to_matrix(), 0, 1), exact, 1e-12);
    const int shots = 4000;
    for (uint64_t s = 0; s < 20; s++) {
        EXPECT_LE(std::abs(hadamard_estimate(phi, p.to_matrix(), shots, s) - exact), 4.0 / std::sqrt(shots));
    }
    EXPECT_THROW(hadamard_estimate(phi, CMatrix(2.0 * id), 0, 1), Error);
    CMatrix s = CMatrix::Identity(8, 8);
    s(0, 0) = Complex(0, 1);
    EXPECT_THROW(hadamard_estimate(phi, s, 0, 1), Error);
}

TEST(Hadamard, ShotModeIsUnbiased) {
    StateVector phi = tensor_power(plus_state(), 1);
    CMatrix a = PauliOp::parse("X").to_matrix() * 0.6 + PauliOp::parse("Z").to_matrix() * 0.8;
    double exact = 0.6;
    double sum = 0;
    const int reps = 2000, shots = 50;
    for (int r = 0; r < reps; r++) {
        sum += hadamard_estimate(phi, a, shots, static_cast<uint64_t>(r));
    }
    double mean = sum / reps;
    double sd = std::sqrt((1 - exact * exact) / shots / reps);
    EXPECT_LE(std::abs(mean - exact), 4 * sd);
}

TEST(PauliQuantum, IdenticalStatesGiveIdentity) {
    Rng rng(8);
    StateVector a = haar_state(2, rng);
    auto inst = pauli_instance(a, a);
    auto gamma = gamma_group(2, 2);
    auto dist = character_distribution(build_phi(a, a, 2), *gamma);
    for (uint64_t chi = 0; chi < dist.size(); chi++) {
        if (f2_dot(chi, gamma_label(1, 0))) {
            EXPECT_NEAR(dist[chi], 0, 1e-12);
        }
    }
    auto v = pauli_psgi_quantum(inst);
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_EQ(*v.witness, 0u);
    EXPECT_NEAR(v.achieved_overlap.real(), 1, 1e-10);
}

TEST(PauliQuantum, BitFlipOnRandomState) {
    Rng rng(9);
    for (int t = 0; t < 10; t++) {
        StateVector a = haar_state(2, rng);
        PauliOp x = PauliOp::single(2, 0, 'X');
        StateVector b(2, x.apply(a.amplitudes()));
        auto inst = pauli_instance(a, b);
        auto v = pauli_psgi_quantum(inst, {.seed = static_cast<uint64_t>(t)});
        auto o = psgi_oracle(inst);
        ASSERT_EQ(v.decision, Decision::Yes);
        EXPECT_EQ(v.witness_label, "+XI");
        EXPECT_EQ(*v.witness, *o.witness);
    }
}

TEST(PauliQuantum, GraphStateNoOverSeeds) {
    auto inst = pauli_instance(StateVector::zeros(2), edge_graph_state());
    int agree = 0;
    for (uint64_t s = 0; s < 100; s++) {
        agree += pauli_psgi_quantum(inst, {.seed = s}).decision == Decision::No;
    }
    EXPECT_EQ(agree, 100);
}

TEST(PauliQuantum, AgreesWithOracleAndWitnessesVerify) {
    for (int n : {1, 2}) {
        auto insts = pauli_promise_instances(n, 100, 1000 + static_cast<uint64_t>(n));
        int agree = 0;
        for (size_t i = 0; i < insts.size(); i++) {
            auto o = psgi_oracle(insts[i]);
            ASSERT_NE(o.decision, Decision::PromiseViolated);
            auto q = pauli_psgi_quantum(insts[i], {.seed = 77 + i});
            agree += q.decision == o.decision;
            if (q.decision == Decision::Yes) {
                Complex dense = group_overlap(insts[i], *q.witness);
                EXPECT_GE(dense.real(), insts[i].thresholds.beta - 1e-8);
                EXPECT_NEAR(std::abs(dense - q.achieved_overlap), 0, 1e-12);
            }
        }
        EXPECT_GE(agree, 99) << "n=" << n;
    }
}

TEST(PauliQuantum, ShotModeAgrees) {
    auto insts = pauli_promise_instances(2, 20, 5);
    for (size_t i = 0; i < insts.size(); i++) {
        PauliSolverOptions opt;
        opt.seed = i;
        opt.shot_mode = true;
        opt.shots = 2000;
        EXPECT_EQ(pauli_psgi_quantum(insts[i], opt).decision, psgi_oracle(insts[i]).decision);
    }
}

TEST(PauliQuantum, GuardsAndErrors) {
    auto inst = pauli_instance(StateVector::zeros(2), StateVector::zeros(2));
    PauliSolverOptions opt;
    opt.m = 5;
    try {
        pauli_psgi_quantum(inst, opt);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
    }
    PsgiInstance bad{StateVector::zeros(1), StateVector::zeros(1), std::make_shared<Z2kRep>(1), {}};
    EXPECT_THROW(pauli_psgi_quantum(bad), Error);
    Rng rng(1);
    EXPECT_THROW(pauli_no_instance(1, rng), Error);
}

TEST(PauliQuantum, TwoCopySquaringIdentity) {
    Rng rng(10);
    std::uniform_int_distribution<uint64_t> pick(0, 15);
    auto gamma = gamma_group(2, 1);
    for (int t = 0; t < 500; t++) {
        StateVector a = haar_state(2, rng), b = haar_state(2, rng);
        PauliOp p = pauli_from_index(2, pick(rng), false);
        Complex ov = a.amplitudes().dot(p.apply(b.amplitudes()));
        double lhs = (ov * ov).real();
        EXPECT_NEAR(lhs, 2 * ov.real() * ov.real() - std::norm(ov), 1e-12);
        StateVector phi = build_phi(a, b, 1);
        uint64_t x = gamma_label(1, pauli_to_two_copy_label(p));
        Complex f = phi.amplitudes().dot(gamma->apply(x, phi.amplitudes()));
        EXPECT_NEAR(f.real(), lhs, 1e-12);
    }
}

TEST(StateHsp, OverlapIdentityOnRandomElements) {
    Rng rng(12);
    std::vector<GroupRepPtr> reps{std::make_shared<Z2kRep>(2), std::make_shared<CyclicRep>(4, CyclicRep::Kind::Phase),
                                  std::make_shared<CyclicRep>(4, CyclicRep::Kind::Shift)};
    for (const auto &rep : reps) {
        int n = rep->n_qubits();
        for (int m : {1, 2, 3}) {
            PsgiInstance inst{haar_state(n, rng), haar_state(n, rng), rep, {}};
            auto r = psgi_to_statehsp(inst, m);
            EXPECT_TRUE(r.bounds_hold);
            for (uint64_t h = 0; h < rep->order(); h++) {
                double re = group_overlap(inst, h).real();
                Complex o = odd_overlap(r, h);
                EXPECT_NEAR(o.real(), std::pow(re, m), 1e-8);
                EXPECT_NEAR(o.imag(), 0, 1e-8);
            }
        }
    }
}

TEST(StateHsp, ExactAndNearYes) {
    Rng rng(13);
    auto rep = std::make_shared<CyclicRep>(4, CyclicRep::Kind::Phase);
    StateVector a = haar_state(2, rng);
    uint64_t h = 3;
    StateVector exact = StateVector::normalized(2, rep->matrix(h).adjoint() * a.amplitudes());
    auto r1 = psgi_to_statehsp({a, exact, rep, {}}, 2);
    EXPECT_NEAR(odd_overlap(r1, h).real(), 1.0, 1e-10);

    // Re<a|R(h)|b> = 0.99.
    StateVector w = haar_state(2, rng);
    CVector perp = w.amplitudes() - a.amplitudes().dot(w.amplitudes()) * a.amplitudes();
    perp.normalize();
    CVector mix = 0.99 * a.amplitudes() + std::sqrt(1 - 0.99 * 0.99) * perp;
    StateVector b = StateVector::normalized(2, rep->matrix(h).adjoint() * mix);
    PsgiInstance inst{a, b, rep, {0.6, 0.99}};
    auto r3 = psgi_to_statehsp(inst, 3);
    EXPECT_NEAR(odd_overlap(r3, h).real(), std::pow(0.99, 3), 1e-10);
    EXPECT_NEAR(r3.completeness, std::pow(0.99, 3), 1e-12);
    EXPECT_NEAR(r3.completeness_linear, 0.97, 1e-12);
    EXPECT_NEAR(r3.soundness, 0.216, 1e-12);
    EXPECT_GE(r3.completeness, r3.completeness_linear);
}

TEST(StateHsp, RejectsNonAbelianOrProjective) {
    StateVector z = StateVector::zeros(1);
    EXPECT_THROW(psgi_to_statehsp({z, z, std::make_shared<PauliGroupRep>(1, false), {}}, 1), Error);
    StateVector z2 = StateVector::zeros(3);
    EXPECT_THROW(psgi_to_statehsp({z2, z2, std::make_shared<PermutationRep>(3), {}}, 1), Error);
}
