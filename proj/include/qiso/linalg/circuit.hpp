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

#ifndef QISO_LINALG_CIRCUIT_HPP
#define QISO_LINALG_CIRCUIT_HPP

#include <array>
#include <numbers>
#include <optional>

#include "qiso/linalg/random.hpp"
#include "qiso/linalg/types.hpp"

namespace qiso {

enum class GateKind { H, S, SDG, T, TDG, X, Y, Z, CZ, CNOT, R8 };

inline const char *gate_name(GateKind g) {
    switch (g) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::SDG:
            return "SDG";
        case GateKind::T:
            return "T";
        case GateKind::TDG:
            return "TDG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::R8:
            return "R8";
    }
    return "?";
}

inline std::optional<GateKind> parse_gate_name(const std::string &s) {
    static const std::array<std::pair<const char *, GateKind>, 14> table{{
        {"H", GateKind::H},
        {"S", GateKind::S},
        {"SDG", GateKind::SDG},
        {"S_DAG", GateKind::SDG},
        {"T", GateKind::T},
        {"TDG", GateKind::TDG},
        {"T_DAG", GateKind::TDG},
        {"X", GateKind::X},
        {"Y", GateKind::Y},
        {"Z", GateKind::Z},
        {"CZ", GateKind::CZ},
        {"CNOT", GateKind::CNOT},
        {"CX", GateKind::CNOT},
        {"R8", GateKind::R8},
    }};
    for (const auto &[name, kind] : table) {
        if (s == name) {
            return kind;
        }
    }
    return std::nullopt;
}

inline int gate_arity(GateKind g) {
    return (g == GateKind::CZ || g == GateKind::CNOT) ? 2 : 1;
}

struct Gate {
    GateKind kind;
    std::vector<int> targets;
    bool operator==(const Gate &) const = default;
};

/// Gate list over a fixed alphabet plus the qubits traced out when a mixed state is wanted.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    std::vector<int> traced;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {
    }

    Circuit &add(GateKind g, std::vector<int> targets) {
        gates.push_back(Gate{g, std::move(targets)});
        return *this;
    }

    void validate() const {
        require(n_qubits >= 0 && n_qubits <= kMaxQubits, ErrorKind::TooLarge, "circuit qubit count out of range");
        for (size_t k = 0; k < gates.size(); k++) {
            const Gate &g = gates[k];
            require(static_cast<int>(g.targets.size()) == gate_arity(g.kind), ErrorKind::InvalidArgument,
                    std::string("gate ") + gate_name(g.kind) + " at position " + std::to_string(k) +
                        " has wrong target count");
            for (int t : g.targets) {
                require(t >= 0 && t < n_qubits, ErrorKind::OutOfRange,
                        std::string("gate ") + gate_name(g.kind) + " at position " + std::to_string(k) +
                            " targets qubit " + std::to_string(t) + " outside [0, " + std::to_string(n_qubits) + ")");
            }
            if (g.targets.size() == 2) {
                require(g.targets[0] != g.targets[1], ErrorKind::InvalidArgument,
                        "two-qubit gate with repeated target at position " + std::to_string(k));
            }
        }
    }

    /// This circuit followed by `next`.
    Circuit then(const Circuit &next) const {
        require(next.n_qubits == n_qubits, ErrorKind::DimensionMismatch, "composing circuits of different width");
        Circuit out = *this;
        out.gates.insert(out.gates.end(), next.gates.begin(), next.gates.end());
        return out;
    }
};

namespace detail {

inline void apply_1q(CVector &v, int n, int q, const Complex m[4]) {
    uint64_t stride = uint64_t{1} << (n - 1 - q);
    auto d = static_cast<uint64_t>(v.size());
    for (uint64_t base = 0; base < d; base++) {
        if (base & stride) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(base);
        auto i1 = static_cast<Eigen::Index>(base | stride);
        Complex a = v(i0), b = v(i1);
        v(i0) = m[0] * a + m[1] * b;
        v(i1) = m[2] * a + m[3] * b;
    }
}

inline void apply_phase_1q(CVector &v, int n, int q, Complex ph) {
    uint64_t stride = uint64_t{1} << (n - 1 - q);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        if (static_cast<uint64_t>(i) & stride) {
            v(i) *= ph;
        }
    }
}

}  // namespace detail

inline void apply_gate(CVector &v, int n, const Gate &g) {
    const double s2 = 1.0 / std::sqrt(2.0);
    const Complex I(0, 1);
    int q = g.targets[0];
    switch (g.kind) {
        case GateKind::H: {
            const Complex m[4] = {s2, s2, s2, -s2};
            detail::apply_1q(v, n, q, m);
            break;
        }
        case GateKind::X: {
            const Complex m[4] = {0, 1, 1, 0};
            detail::apply_1q(v, n, q, m);
            break;
        }
        case GateKind::Y: {
            const Complex m[4] = {0, -I, I, 0};
            detail::apply_1q(v, n, q, m);
            break;
        }
        case GateKind::Z:
            detail::apply_phase_1q(v, n, q, -1.0);
            break;
        case GateKind::S:
            detail::apply_phase_1q(v, n, q, I);
            break;
        case GateKind::SDG:
            detail::apply_phase_1q(v, n, q, -I);
            break;
        case GateKind::T:
            detail::apply_phase_1q(v, n, q, std::polar(1.0, std::numbers::pi / 4));
            break;
        case GateKind::TDG:
            detail::apply_phase_1q(v, n, q, std::polar(1.0, -std::numbers::pi / 4));
            break;
        case GateKind::R8:
            detail::apply_phase_1q(v, n, q, std::polar(1.0, std::numbers::pi / 8));
            break;
        case GateKind::CZ: {
            uint64_t a = uint64_t{1} << (n - 1 - g.targets[0]);
            uint64_t b = uint64_t{1} << (n - 1 - g.targets[1]);
            for (Eigen::Index i = 0; i < v.size(); i++) {
                auto u = static_cast<uint64_t>(i);
                if ((u & a) && (u & b)) {
                    v(i) = -v(i);
                }
            }
            break;
        }
        case GateKind::CNOT: {
            uint64_t c = uint64_t{1} << (n - 1 - g.targets[0]);
            uint64_t t = uint64_t{1} << (n - 1 - g.targets[1]);
            for (Eigen::Index i = 0; i < v.size(); i++) {
                auto u = static_cast<uint64_t>(i);
                if ((u & c) && !(u & t)) {
                    std::swap(v(i), v(static_cast<Eigen::Index>(u | t)));
                }
            }
            break;
        }
    }
}

/// Applies the circuit to an arbitrary input state.
inline StateVector run_circuit_on(const Circuit &c, const StateVector &in) {
    c.validate();
    require(in.n_qubits() == c.n_qubits, ErrorKind::DimensionMismatch, "circuit/state width mismatch");
    CVector v = in.amplitudes();
    for (const Gate &g : c.gates) {
        apply_gate(v, c.n_qubits, g);
    }
    return StateVector::normalized(c.n_qubits, std::move(v));
}

/// C|0^n>.
inline StateVector run_circuit(const Circuit &c) {
    c.validate();
    return run_circuit_on(c, StateVector::zeros(c.n_qubits));
}

/// Dense unitary of the circuit, column x = C|x>.
inline CMatrix circuit_unitary(const Circuit &c) {
    c.validate();
    auto d = static_cast<Eigen::Index>(dim_of(c.n_qubits));
    CMatrix u = CMatrix::Identity(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        CVector col = u.col(j);
        for (const Gate &g : c.gates) {
            apply_gate(col, c.n_qubits, g);
        }
        u.col(j) = col;
    }
    return u;
}

/// Output of the circuit with the declared qubits traced out.
inline DensityMatrix prepare_mixed(const Circuit &c) {
    c.validate();
    require(static_cast<int>(c.traced.size()) < c.n_qubits || c.n_qubits == 0, ErrorKind::InvalidArgument,
            "traced set must leave at least one output qubit");
    StateVector out = run_circuit(c);
    return partial_trace(DensityMatrix::pure(out), c.traced);
}

/// Seeded brick-layer circuit: per layer every qubit gets H then T^k (k uniform in 0..7),
/// followed by CZ on neighbouring pairs with alternating offset.
inline Circuit random_brick_circuit(int n, int depth, uint64_t seed) {
    require(n >= 1, ErrorKind::InvalidArgument, "random_brick_circuit needs n >= 1");
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, 7);
    Circuit c(n);
    for (int layer = 0; layer < depth; layer++) {
        for (int q = 0; q < n; q++) {
            c.add(GateKind::H, {q});
            int k = pick(rng);
            if (k & 4) {
                c.add(GateKind::Z, {q});
            }
            if (k & 2) {
                c.add(GateKind::S, {q});
            }
            if (k & 1) {
                c.add(GateKind::T, {q});
            }
        }
        for (int q = layer % 2; q + 1 < n; q += 2) {
            c.add(GateKind::CZ, {q, q + 1});
        }
    }
    return c;
}

}  // namespace qiso

#endif
