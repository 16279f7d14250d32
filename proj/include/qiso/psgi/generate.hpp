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

#ifndef QISO_PSGI_GENERATE_HPP
#define QISO_PSGI_GENERATE_HPP

#include "qiso/linalg/random.hpp"
#include "qiso/psgi/instance.hpp"

namespace qiso {

/// max_P |<psi1|P|psi2>| over the 4^n Hermitian Paulis (phases do not change |.|).
inline double max_pauli_overlap_abs(const StateVector &psi1, const StateVector &psi2) {
    PauliGroupRep unphased(psi1.n_qubits(), false);
    double best = 0;
    for (uint64_t g = 0; g < unphased.order(); g++) {
        best = std::max(best, std::abs(psi1.amplitudes().dot(unphased.apply(g, psi2.amplitudes()))));
    }
    return best;
}

/// psi1 Haar, psi2 = P^dagger psi1 for a uniformly random phased Pauli P, so <psi1|P|psi2> = 1.
inline PsgiInstance pauli_yes_instance(int n, Rng &rng, DecisionThresholds thr = {}) {
    auto rep = std::make_shared<PauliGroupRep>(n);
    std::uniform_int_distribution<uint64_t> pick(0, rep->order() - 1);
    StateVector psi1 = haar_state(n, rng);
    CMatrix p = rep->matrix(pick(rng));
    StateVector psi2 = StateVector::normalized(n, p.adjoint() * psi1.amplitudes());
    return {psi1, psi2, rep, thr};
}

/// Haar pairs rejection-sampled until every Pauli overlap has |.| <= alpha. None exist at n = 1
/// (the four squared overlaps sum to 2), so n >= 2 is required.
inline PsgiInstance pauli_no_instance(int n, Rng &rng, DecisionThresholds thr = {}, int max_tries = 100000) {
    require(n >= 2, ErrorKind::InvalidArgument, "no Pauli NO instances exist at n = 1");
    auto rep = std::make_shared<PauliGroupRep>(n);
    for (int t = 0; t < max_tries; t++) {
        StateVector a = haar_state(n, rng), b = haar_state(n, rng);
        if (max_pauli_overlap_abs(a, b) <= thr.alpha) {
            return {a, b, rep, thr};
        }
    }
    throw Error(ErrorKind::InvalidArgument, "failed to sample a NO instance");
}

/// `count` promise-respecting Pauli instances; alternates YES/NO for n >= 2, YES only for n = 1.
inline std::vector<PsgiInstance> pauli_promise_instances(int n, int count, uint64_t seed, DecisionThresholds thr = {}) {
    std::vector<PsgiInstance> out;
    for (int i = 0; i < count; i++) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(i)));
        bool yes = n == 1 || i % 2 == 0;
        out.push_back(yes ? pauli_yes_instance(n, rng, thr) : pauli_no_instance(n, rng, thr));
    }
    return out;
}

}  // namespace qiso

#endif
