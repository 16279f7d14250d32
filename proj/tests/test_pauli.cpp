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
#include <set>

#include "qiso/linalg/circuit.hpp"
#include "qiso/pauli/clifford.hpp"
#include "qiso/pauli/graph.hpp"
#include "qiso/pauli/states.hpp"

using namespace qiso;

namespace {

CMatrix dense_conj(const CMatrix &u, const CMatrix &p) {
    return u * p * u.adjoint();
}

// Equality up to a global phase.
bool equal_up_to_phase(const CMatrix &a, const CMatrix &b, double tol = 1e-10) {
    Eigen::Index r, c;
    a.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) < 1e-12) {
        return false;
    }
    Complex ph = a(r, c) / b(r, c);
    return (a - ph * b).norm() < tol;
}

std::pair<std::vector<uint64_t>, uint64_t> key(const CliffordElement &c) {
    return {c.symplectic_rows(), c.sign_bits()};
}

}  // namespace

TEST(pauli, multiply_tracks_phase) {
    PauliOp x = PauliOp::parse("X"), z = PauliOp::parse("Z"), y = PauliOp::parse("Y");
    EXPECT_EQ((x * z).str(), "-iY");
    EXPECT_EQ((z * x).str(), "+iY");
    EXPECT_EQ((x * y).str(), "+iZ");
    EXPECT_EQ((y * y).str(), "+I");
    EXPECT_FALSE(pauli_commutes(x, z));
    EXPECT_TRUE(pauli_commutes(PauliOp::parse("XX"), PauliOp::parse("ZZ")));
    EXPECT_THROW(pauli_multiply(x, PauliOp::parse("XX")), Error);
}

TEST(pauli, string_round_trip) {
    for (const char *s : {"+iXZI", "-Y", "+XX", "-iZYX", "+I"}) {
        EXPECT_EQ(PauliOp::parse(s).str(), s);
    }
    EXPECT_EQ(PauliOp::parse("XZ").str(), "+XZ");
    EXPECT_THROW(PauliOp::parse("XQ"), Error);
}

TEST(pauli, multiplication_matches_matrices_exhaustively) {
    int n = 2;
    for (uint64_t a = 0; a < phased_pauli_count(n); a++) {
        PauliOp p = pauli_from_index(n, a);
        EXPECT_EQ(pauli_to_index(p), a);
        CMatrix pm = p.to_matrix();
        for (uint64_t b = 0; b < phased_pauli_count(n); b += 3) {
            PauliOp q = pauli_from_index(n, b);
            CMatrix qm = q.to_matrix();
            EXPECT_LT(((p * q).to_matrix() - pm * qm).norm(), 1e-14);
            bool commute = (pm * qm - qm * pm).norm() < 1e-12;
            EXPECT_EQ(commute, pauli_commutes(p, q));
        }
    }
}

TEST(pauli, matrix_letters_match_kron) {
    const Complex I(0, 1);
    CMatrix X(2, 2), Y(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Y << 0, -I, I, 0;
    Z << 1, 0, 0, -1;
    EXPECT_LT((PauliOp::parse("XYZ").to_matrix() - kron(kron(X, Y), Z)).norm(), 1e-14);
    EXPECT_LT((PauliOp::parse("-iZX").to_matrix() - (-I) * kron(Z, X)).norm(), 1e-14);
    EXPECT_TRUE(PauliOp::parse("-Y").is_hermitian());
    EXPECT_FALSE(PauliOp::parse("iY").is_hermitian());
}

TEST(clifford, gate_tableaus_match_dense_gates) {
    int n = 3;
    std::vector<std::pair<GateKind, std::vector<int>>> gates = {
        {GateKind::H, {1}},    {GateKind::S, {0}},       {GateKind::SDG, {2}},     {GateKind::X, {1}},
        {GateKind::Y, {0}},    {GateKind::Z, {2}},       {GateKind::CNOT, {0, 2}}, {GateKind::CNOT, {2, 1}},
        {GateKind::CZ, {1, 0}}};
    for (auto &[g, t] : gates) {
        Circuit c(n);
        c.add(g, t);
        CMatrix u = circuit_unitary(c);
        CliffordElement cl = CliffordElement::gate(n, g, t);
        for (int q = 0; q < n; q++) {
            for (char l : {'X', 'Z'}) {
                PauliOp p = PauliOp::single(n, q, l);
                EXPECT_LT((cl.conjugate(p).to_matrix() - dense_conj(u, p.to_matrix())).norm(), 1e-12)
                    << gate_name(g) << " " << l << q;
            }
        }
        EXPECT_TRUE(equal_up_to_phase(cl.to_matrix(), u));
    }
    EXPECT_THROW(CliffordElement::gate(1, GateKind::T, {0}), Error);
}

TEST(clifford, conjugation_examples) {
    EXPECT_EQ(CliffordElement::gate(1, GateKind::H, {0}).conjugate(PauliOp::parse("Z")).str(), "+X");
    EXPECT_EQ(CliffordElement::gate(1, GateKind::S, {0}).conjugate(PauliOp::parse("X")).str(), "+Y");
    EXPECT_EQ(CliffordElement::gate(2, GateKind::CNOT, {0, 1}).conjugate(PauliOp::parse("XI")).str(), "+XX");
}

TEST(clifford, tableau_conjugation_matches_dense_on_random_pairs) {
    Rng rng(101);
    for (int t = 0; t < 200; t++) {
        int n = 1 + t % 3;
        CliffordElement c = random_clifford(n, rng);
        c.validate();
        PauliOp p = pauli_from_index(n, std::uniform_int_distribution<uint64_t>(0, phased_pauli_count(n) - 1)(rng));
        CMatrix u = c.to_matrix();
        EXPECT_TRUE(is_unitary(u, 1e-10));
        EXPECT_LT((c.conjugate(p).to_matrix() - dense_conj(u, p.to_matrix())).norm(), 1e-10);
    }
}

TEST(clifford, composition_inverse_and_canonical_phase) {
    Rng rng(7);
    for (int t = 0; t < 100; t++) {
        int n = 1 + t % 3;
        CliffordElement a = random_clifford(n, rng), b = random_clifford(n, rng);
        EXPECT_TRUE(equal_up_to_phase((a * b).to_matrix(), a.to_matrix() * b.to_matrix()));
        EXPECT_EQ(a * a.inverse(), CliffordElement::identity(n));
        EXPECT_EQ(a.inverse() * a, CliffordElement::identity(n));
        CVector col0 = a.to_matrix().col(0);
        for (Eigen::Index i = 0; i < col0.size(); i++) {
            if (std::abs(col0(i)) > 1e-9) {
                EXPECT_NEAR(col0(i).imag(), 0, 1e-12);
                EXPECT_GT(col0(i).real(), 0);
                break;
            }
        }
    }
}

TEST(clifford, from_circuit_matches_dense) {
    Circuit c(3);
    c.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1}).add(GateKind::S, {1}).add(GateKind::CZ, {1, 2});
    c.add(GateKind::H, {2}).add(GateKind::SDG, {0}).add(GateKind::Y, {2});
    EXPECT_TRUE(equal_up_to_phase(CliffordElement::from_circuit(c).to_matrix(), circuit_unitary(c)));
}

TEST(clifford, enumerate_n1_gives_24_distinct_unitaries) {
    std::vector<CMatrix> seen;
    uint64_t count = 0;
    enumerate_cliffords(1, [&](uint64_t idx, const CliffordElement &c) {
        EXPECT_EQ(idx, count);
        count++;
        CMatrix u = c.to_matrix();
        for (const CMatrix &v : seen) {
            EXPECT_FALSE(equal_up_to_phase(u, v));
        }
        seen.push_back(u);
    });
    EXPECT_EQ(count, 24u);
    EXPECT_EQ(clifford_count(1), 24u);
}

TEST(clifford, enumerate_n2_distinct_and_closed) {
    std::map<std::pair<std::vector<uint64_t>, uint64_t>, uint64_t> index;
    std::vector<CliffordElement> all;
    enumerate_cliffords(2, [&](uint64_t idx, const CliffordElement &c) {
        index[key(c)] = idx;
        all.push_back(c);
    });
    EXPECT_EQ(all.size(), 11520u);
    EXPECT_EQ(index.size(), 11520u);
    EXPECT_EQ(clifford_count(2), 11520u);
    Rng rng(3);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 5000; t++) {
        CliffordElement p = all[pick(rng)] * all[pick(rng)];
        EXPECT_TRUE(index.count(key(p)));
        EXPECT_TRUE(index.count(key(all[pick(rng)].inverse())));
    }
    EXPECT_THROW(enumerate_cliffords(3, [](uint64_t, const CliffordElement &) {}), Error);
}

TEST(clifford, enumerate_n1_closed_under_all_products) {
    std::set<std::pair<std::vector<uint64_t>, uint64_t>> keys;
    std::vector<CliffordElement> all;
    enumerate_cliffords(1, [&](uint64_t, const CliffordElement &c) {
        keys.insert(key(c));
        all.push_back(c);
    });
    for (auto &a : all) {
        for (auto &b : all) {
            EXPECT_TRUE(keys.count(key(a * b)));
        }
    }
}

TEST(clifford, random_is_seeded_and_roughly_uniform) {
    EXPECT_EQ(random_clifford(3, uint64_t{5}), random_clifford(3, uint64_t{5}));
    EXPECT_NE(random_clifford(3, uint64_t{5}), random_clifford(3, uint64_t{6}));
    std::map<std::pair<std::vector<uint64_t>, uint64_t>, int> hist;
    Rng rng(77);
    const int N = 24000;
    for (int t = 0; t < N; t++) {
        hist[key(random_clifford(1, rng))]++;
    }
    EXPECT_EQ(hist.size(), 24u);
    double chi2 = 0;
    for (auto &[k, c] : hist) {
        chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    }
    // 23 degrees of freedom; 99.99th percentile is about 58.
    EXPECT_LT(chi2, 58.0);
}

TEST(clifford, permutation_detection) {
    auto sw = is_qubit_permutation(CliffordElement::swap(2, 0, 1));
    ASSERT_TRUE(sw.has_value());
    EXPECT_EQ(*sw, (std::vector<int>{1, 0}));
    EXPECT_FALSE(is_qubit_permutation(CliffordElement::gate(1, GateKind::H, {0})).has_value());
    EXPECT_FALSE(is_qubit_permutation(CliffordElement::gate(2, GateKind::CZ, {0, 1})).has_value());
    EXPECT_FALSE(is_qubit_permutation(CliffordElement::gate(2, GateKind::X, {0})).has_value());
    std::vector<int> perm = {2, 0, 1};
    CliffordElement c = CliffordElement::permutation(perm);
    EXPECT_EQ(*is_qubit_permutation(c), perm);
    EXPECT_LT((c.to_matrix() - qubit_permutation_matrix(perm)).norm(), 1e-14);
}

TEST(graph_state, small_cases) {
    EXPECT_LT((graph_state(Graph(1)).amplitudes() - plus_state().amplitudes()).norm(), 1e-15);
    CVector k2(4);
    k2 << 0.5, 0.5, 0.5, -0.5;
    EXPECT_LT((graph_state(Graph::path(2)).amplitudes() - k2).norm(), 1e-15);
}

TEST(graph_state, stabilizers_hold_for_all_graphs_up_to_5_vertices) {
    for (int n = 1; n <= 5; n++) {
        for (const Graph &g : all_graphs(n)) {
            StateVector s = graph_state(g);
            for (int v = 0; v < n; v++) {
                EXPECT_NEAR(std::abs(pauli_expectation(s, graph_stabilizer(g, v)) - 1.0), 0, 1e-9);
            }
        }
    }
}

TEST(graph_state, relabel_matches_qubit_permutation) {
    Graph g(4, {{0, 1}, {1, 2}, {1, 3}});
    std::vector<int> perm = {3, 1, 0, 2};
    CVector moved = permute_qubits(graph_state(g).amplitudes(), perm);
    EXPECT_LT((moved - graph_state(g.relabel(perm)).amplitudes()).norm(), 1e-14);
}

TEST(graph, edge_list_parsing) {
    Graph g = Graph::parse_edge_list("3\n0 1\n# comment\n1 2\n");
    EXPECT_EQ(g, Graph::path(3));
    EXPECT_EQ(Graph::parse_edge_list(g.to_edge_list()), g);
    EXPECT_THROW(Graph::parse_edge_list("3\n0 3\n"), Error);
    EXPECT_THROW(Graph::parse_edge_list("3\n1 1\n"), Error);
    EXPECT_THROW(Graph::parse_edge_list("3\n0 1 2\n"), Error);
    EXPECT_THROW(Graph::parse_edge_list("3\n0 x\n"), Error);
    EXPECT_THROW(Graph::parse_edge_list(""), Error);
    EXPECT_EQ(Graph::from_adjacency(g.adjacency()), g);
    EXPECT_THROW(Graph::from_adjacency({{0, 1}, {0, 0}}), Error);
}

TEST(graph, isomorphism_search) {
    Graph p4 = Graph::path(4);
    EXPECT_TRUE(find_isomorphism(p4, p4.relabel({2, 0, 3, 1})).has_value());
    EXPECT_FALSE(find_isomorphism(p4, Graph::star(3)).has_value());
}

TEST(r_state, basic_overlaps) {
    EXPECT_NEAR(std::abs(inner_product(r_state(), r_state()) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(r_state(), r_minus_state())), 0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(StateVector::basis(1, 0), r_state()) - 1.0 / std::sqrt(2.0)), 0, 1e-15);
}

TEST(r_state, expectation_table) {
    const double c8 = std::cos(M_PI / 8), s8 = std::sin(M_PI / 8);
    for (int n = 1; n <= 5; n++) {
        StateVector r = r_state_product(n);
        for (int i = 0; i < n; i++) {
            EXPECT_NEAR(std::abs(pauli_expectation(r, PauliOp::single(n, i, 'X')) - c8), 0, 1e-12);
            EXPECT_NEAR(std::abs(pauli_expectation(r, PauliOp::single(n, i, 'Y')) - s8), 0, 1e-12);
            EXPECT_NEAR(std::abs(pauli_expectation(r, PauliOp::single(n, i, 'Z'))), 0, 1e-12);
        }
    }
    EXPECT_NEAR(c8, 0.9238, 1e-4);
    EXPECT_NEAR(s8, 0.3826, 1e-4);
}

TEST(r_state, product_rule_on_random_paulis) {
    const double c8 = std::cos(M_PI / 8), s8 = std::sin(M_PI / 8);
    Rng rng(13);
    for (int t = 0; t < 500; t++) {
        int n = 1 + t % 5;
        PauliOp p = pauli_from_index(n, std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << (2 * n)) - 1)(rng));
        p = p.negated().with_phase(p.phase_exponent() + 2 * (t % 2));
        Complex e = pauli_expectation(r_state_product(n), p);
        double mag = p.num_z() > 0 ? 0.0 : std::pow(c8, p.num_x()) * std::pow(s8, p.num_y());
        EXPECT_NEAR(std::abs(e.imag()), 0, 1e-12);
        EXPECT_NEAR(std::abs(e.real()), mag, 1e-12);
    }
}
