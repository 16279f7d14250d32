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

#ifndef QISO_PROTOCOLS_LIBRARY_HPP
#define QISO_PROTOCOLS_LIBRARY_HPP

#include "qiso/groups/spec.hpp"
#include "qiso/pauli/states.hpp"
#include "qiso/protocols/interactive.hpp"

namespace qiso {

/// A named instance with its ground truth: isomorphic instances should give acceptance 1/2,
/// non-isomorphic ones acceptance near 1.
template <typename Instance>
struct LibraryEntry {
    std::string name;
    Instance instance;
    bool isomorphic = false;
};

inline std::vector<LibraryEntry<PsgiInstance>> qcszk_library() {
    auto pauli1 = std::make_shared<PauliGroupRep>(1, false);
    auto pauli2 = std::make_shared<PauliGroupRep>(2, false);
    StateVector zero2 = StateVector::basis(2, 0);
    StateVector k2 = graph_state(Graph::path(2));
    return {
        // max_P |<00|P|K2>| = 1/2.
        {"zero_vs_k2_graph_pauli2", {zero2, k2, pauli2, {0.5, 0.99}}, false},
        // Orbits {|0>, |1>} and {|+>, |->}, overlap 1/sqrt2.
        {"zero_vs_plus_pauli1", {StateVector::basis(1, 0), plus_state(), pauli1, {0.75, 0.99}}, false},
        {"zero_vs_flipped_pauli2", {zero2, StateVector::basis(2, 2), pauli2, {0.5, 0.99}}, true},
        {"identical_k2_graph_pauli2", {k2, k2, pauli2, {0.5, 0.99}}, true},
    };
}

namespace detail {
inline DensityMatrix pure_density(double c0, double c1) {
    CVector v(2);
    v << c0, c1;
    return DensityMatrix::pure(StateVector::normalized(1, v));
}
inline GroupRepPtr one_qubit_pair_group(const CMatrix &m, const std::string &name) {
    return std::make_shared<ExplicitRep>(1, std::vector<CMatrix>{CMatrix::Identity(2, 2), m}, name);
}
}  // namespace detail

struct MixedLibraryEntry {
    std::string name;
    MsgiInstance instance;
    int k = 1;
    bool isomorphic = false;
    /// The best pairwise square-root fidelity max_g F(R(g) sigma0 R(g)^dag, sigma1).
    double alpha = 0;
};

/// Constructed instances for the twirl-and-distinguish protocol.
inline std::vector<MixedLibraryEntry> qszk_mixed_library() {
    CMatrix z = CMatrix::Identity(2, 2), x = CMatrix::Zero(2, 2);
    z(1, 1) = -1;
    x(0, 1) = x(1, 0) = 1;
    auto gz = detail::one_qubit_pair_group(z, "z2_phase");
    auto gx = detail::one_qubit_pair_group(x, "z2_flip");
    double s = 0.3, c = std::sqrt(1 - s * s);
    // Far: F(|0>, Z^a (c|1> + s|0>)) = s for both a; alpha^k |G| = 2 (0.3)^3 = 0.054 < 0.1.
    MsgiInstance far{detail::pure_density(1, 0), detail::pure_density(s, c), gz, StateVector::basis(1, 0), 0, {}};
    // Near: F = cos(eps) = 1 - 1/60, so k (1 - F) = 1/20 at k = 3.
    double ce = 1 - 1.0 / 60, se = std::sqrt(1 - ce * ce);
    MsgiInstance near{detail::pure_density(1, 0), detail::pure_density(ce, se), gz, StateVector::basis(1, 0), 0, {}};
    // Isomorphic: X|0> = |1>.
    MsgiInstance iso{detail::pure_density(1, 0), detail::pure_density(0, 1), gx, StateVector::basis(1, 0), 0, {}};
    CMatrix mixed(2, 2);
    mixed << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
    DensityMatrix m(1, mixed);
    MsgiInstance same{m, m, trivial_group(1), StateVector::basis(1, 0), 0, {}};
    return {{"far_z2_phase_k3", far, 3, false, s},
            {"near_z2_phase_k3", near, 3, true, ce},
            {"isomorphic_z2_flip_k3", iso, 3, true, 1.0},
            {"trivial_group_equal_k1", same, 1, true, 1.0}};
}

/// max over C in C_n of |<psi1|C|psi2>| by enumeration (n <= 2).
inline double max_clifford_overlap(const CVector &psi1, const CVector &psi2, int n) {
    double best = 0;
    enumerate_cliffords(n, [&](uint64_t, const CliffordElement &c) {
        best = std::max(best, std::abs(psi1.dot(c.apply(psi2))));
    });
    return best;
}

/// Face state cos(b)|0> + e^{i pi/4} sin(b)|1> with cos 2b = 1/sqrt3, the one-qubit state farthest
/// from the stabilizer states.
inline std::vector<std::pair<Complex, StabFactor::Kind>> face_state_terms() {
    double b = 0.5 * std::acos(1 / std::sqrt(3.0));
    return {{std::cos(b), StabFactor::Kind::Zero}, {std::polar(std::sin(b), std::numbers::pi / 4), StabFactor::Kind::One}};
}

/// Face state on both qubits, written as four computational-basis terms.
inline LowRankState face_face_state() {
    std::vector<StabTerm> terms;
    for (const auto &[ca, ka] : face_state_terms()) {
        for (const auto &[cb, kb] : face_state_terms()) {
            terms.push_back(StabTerm{ca * cb, {StabFactor::of(ka), StabFactor::of(kb)}});
        }
    }
    return LowRankState(2, std::move(terms));
}

inline std::vector<LibraryEntry<LowRankPsgi>> szk_lowrank_library() {
    using K = StabFactor::Kind;
    LowRankState zz(2, {StabTerm{1.0, {StabFactor::of(K::Zero), StabFactor::of(K::Zero)}}});
    LowRankState ff = face_face_state();
    LowRankState rz(2, {StabTerm{1.0, {StabFactor::of(K::Zero), StabFactor::of(K::R)}}});
    LowRankState zr(2, {StabTerm{1.0, {StabFactor::of(K::R), StabFactor::of(K::Zero)}}});
    auto gi = lowrank_gi_instance(Graph::path(2), Graph::path(2));
    return {
        // Best Clifford overlap (1 + 1/sqrt3)/2 = 0.7887.
        {"zero_zero_vs_face_face", {zz, ff, {max_clifford_overlap(zz.materialize(), ff.materialize(), 2), 1.0}}, false},
        {"lowrank_gi_edge", lowrank_psgi(gi), true},
        {"zero_r_vs_r_zero", {rz, zr, {0.99, 1.0}}, true},
    };
}

}  // namespace qiso

#endif
