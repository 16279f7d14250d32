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

#ifndef QISO_REDUCTIONS_LOWRANK_STATE_HPP
#define QISO_REDUCTIONS_LOWRANK_STATE_HPP

#include "qiso/pauli/states.hpp"

namespace qiso {

/// One tensor factor of a stabilizer-sum term. Graph factors cover graph.n() qubits; the others
/// cover one qubit. |R> and |R_-> each have stabilizer rank 2.
struct StabFactor {
    enum class Kind { Zero, One, R, RMinus, Graph };
    Kind kind = Kind::Zero;
    Graph graph;

    int n_qubits() const {
        return kind == Kind::Graph ? graph.n() : 1;
    }
    int stabilizer_rank() const {
        return kind == Kind::R || kind == Kind::RMinus ? 2 : 1;
    }
    StateVector state() const {
        switch (kind) {
            case Kind::Zero:
                return StateVector::basis(1, 0);
            case Kind::One:
                return StateVector::basis(1, 1);
            case Kind::R:
                return r_state();
            case Kind::RMinus:
                return r_minus_state();
            case Kind::Graph:
                return graph_state(graph);
        }
        throw Error(ErrorKind::InvalidArgument, "unknown factor kind");
    }
    static StabFactor of(Kind k) {
        return {k, Graph()};
    }
    static StabFactor of_graph(const Graph &g) {
        return {Kind::Graph, g};
    }
};

inline const char *factor_kind_name(StabFactor::Kind k) {
    switch (k) {
        case StabFactor::Kind::Zero:
            return "0";
        case StabFactor::Kind::One:
            return "1";
        case StabFactor::Kind::R:
            return "R";
        case StabFactor::Kind::RMinus:
            return "R-";
        case StabFactor::Kind::Graph:
            return "graph";
    }
    return "?";
}

struct StabTerm {
    Complex coeff = 1;
    std::vector<StabFactor> factors;

    int n_qubits() const {
        int n = 0;
        for (const auto &f : factors) {
            n += f.n_qubits();
        }
        return n;
    }
    int stabilizer_rank() const {
        int r = 1;
        for (const auto &f : factors) {
            r *= f.stabilizer_rank();
        }
        return r;
    }
    /// The unit-coefficient product state.
    CVector product_vector() const {
        require(!factors.empty(), ErrorKind::InvalidArgument, "term has no factors");
        CVector v = factors[0].state().amplitudes();
        for (size_t i = 1; i < factors.size(); i++) {
            v = kron(v, factors[i].state().amplitudes());
        }
        return v;
    }
};

/// sum_k coeff_k |term_k>, expanded to a dense vector on demand.
class LowRankState {
   public:
    LowRankState() = default;
    LowRankState(int n_qubits, std::vector<StabTerm> terms, int rank_bound = 0)
        : n_(n_qubits), terms_(std::move(terms)), rank_bound_(rank_bound) {
        require(!terms_.empty(), ErrorKind::InvalidArgument, "low-rank state needs at least one term");
        for (const auto &t : terms_) {
            require(t.n_qubits() == n_, ErrorKind::DimensionMismatch, "term qubit count mismatch");
        }
        if (rank_bound_ == 0) {
            rank_bound_ = expanded_rank();
        }
        require(expanded_rank() <= rank_bound_, ErrorKind::InvalidArgument, "term count exceeds declared rank bound");
        double nrm = materialize().norm();
        require(std::abs(nrm - 1.0) <= kTol, ErrorKind::InvalidArgument,
                "low-rank state not normalized (norm " + std::to_string(nrm) + ")");
    }

    int n_qubits() const {
        return n_;
    }
    const std::vector<StabTerm> &terms() const {
        return terms_;
    }
    int rank_bound() const {
        return rank_bound_;
    }
    /// Number of stabilizer states after expanding every |R>-type factor.
    int expanded_rank() const {
        int r = 0;
        for (const auto &t : terms_) {
            r += t.stabilizer_rank();
        }
        return r;
    }
    CVector materialize() const {
        CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(n_)));
        for (const auto &t : terms_) {
            v += t.coeff * t.product_vector();
        }
        return v;
    }
    StateVector state() const {
        return StateVector(n_, materialize());
    }

   private:
    int n_ = 0;
    std::vector<StabTerm> terms_;
    int rank_bound_ = 0;
};

}  // namespace qiso

#endif
