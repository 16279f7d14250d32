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

#ifndef QISO_PAULI_STATES_HPP
#define QISO_PAULI_STATES_HPP

#include <numbers>

#include "qiso/pauli/clifford.hpp"
#include "qiso/pauli/graph.hpp"
#include "qiso/pauli/pauli.hpp"

namespace qiso {

/// (|0> + e^{i phi}|1>)/sqrt2.
inline StateVector phase_state(double phi) {
    CVector v(2);
    v << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi);
    return StateVector::normalized(1, v);
}

/// |R> = (|0> + e^{i pi/8}|1>)/sqrt2.
inline StateVector r_state() {
    return phase_state(std::numbers::pi / 8);
}

/// |R_-> = (|0> - e^{i pi/8}|1>)/sqrt2.
inline StateVector r_minus_state() {
    return phase_state(std::numbers::pi / 8 + std::numbers::pi);
}

/// |T> = (|0> + e^{i pi/4}|1>)/sqrt2.
inline StateVector t_state() {
    return phase_state(std::numbers::pi / 4);
}

inline StateVector plus_state() {
    return phase_state(0.0);
}

inline StateVector r_state_product(int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "r_state_product needs n >= 1");
    return tensor_power(r_state(), n);
}

/// prod_{(u,v) in E} CZ_uv |+>^n.
inline StateVector graph_state(const Graph &g) {
    int n = g.n();
    require(n >= 1, ErrorKind::InvalidArgument, "graph_state needs at least one vertex");
    auto d = static_cast<Eigen::Index>(dim_of(n));
    CVector v(d);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    auto edges = g.edges();
    for (uint64_t b = 0; b < static_cast<uint64_t>(d); b++) {
        int parity = 0;
        for (auto [u, w] : edges) {
            parity ^= static_cast<int>(((b >> (n - 1 - u)) & 1) & ((b >> (n - 1 - w)) & 1));
        }
        v(static_cast<Eigen::Index>(b)) = parity ? -amp : amp;
    }
    return StateVector(n, std::move(v));
}

/// K_v = X_v prod_{w~v} Z_w.
inline PauliOp graph_stabilizer(const Graph &g, int v) {
    return PauliOp(g.n(), 0, uint64_t{1} << v, g.neighbours(v));
}

inline StateVector apply_pauli(const PauliOp &p, const StateVector &psi) {
    require(p.n_qubits() == psi.n_qubits(), ErrorKind::DimensionMismatch, "Pauli/state size mismatch");
    return StateVector::normalized(psi.n_qubits(), p.apply(psi.amplitudes()));
}

/// <psi|P|psi>.
inline Complex pauli_expectation(const StateVector &psi, const PauliOp &p) {
    require(p.n_qubits() == psi.n_qubits(), ErrorKind::DimensionMismatch, "Pauli/state size mismatch");
    return psi.amplitudes().dot(p.apply(psi.amplitudes()));
}

/// <a|P|b>.
inline Complex pauli_overlap(const StateVector &a, const PauliOp &p, const StateVector &b) {
    require(p.n_qubits() == a.n_qubits() && a.dim() == b.dim(), ErrorKind::DimensionMismatch,
            "Pauli/state size mismatch");
    return a.amplitudes().dot(p.apply(b.amplitudes()));
}

}  // namespace qiso

#endif
