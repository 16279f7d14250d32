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

#ifndef QISO_PSGI_INSTANCE_HPP
#define QISO_PSGI_INSTANCE_HPP

#include <optional>

#include "json.hpp"
#include "qiso/groups/rep.hpp"

namespace qiso {

struct PsgiInstance {
    StateVector psi1, psi2;
    GroupRepPtr rep;
    DecisionThresholds thresholds;

    void validate() const {
        require(rep != nullptr, ErrorKind::InvalidArgument, "instance has no group");
        require(psi1.dim() == psi2.dim(), ErrorKind::DimensionMismatch, "instance states differ in dimension");
        require(psi1.dim() == rep->dim(), ErrorKind::DimensionMismatch,
                "state dimension " + std::to_string(psi1.dim()) + " != rep dimension " + std::to_string(rep->dim()));
        thresholds.validate();
    }
};

enum class Decision { Yes, No, PromiseViolated };

inline const char *decision_name(Decision d) {
    switch (d) {
        case Decision::Yes:
            return "YES";
        case Decision::No:
            return "NO";
        case Decision::PromiseViolated:
            return "PROMISE_VIOLATED";
    }
    return "?";
}

struct PsgiVerdict {
    Decision decision = Decision::No;
    std::optional<uint64_t> witness;
    std::string witness_label;
    Complex achieved_overlap = 0;
    nlohmann::json diagnostics = nlohmann::json::object();
};

/// <psi1|R(g)|psi2>.
inline Complex group_overlap(const PsgiInstance &inst, uint64_t g) {
    return inst.psi1.amplitudes().dot(inst.rep->apply(g, inst.psi2.amplitudes()));
}

}  // namespace qiso

#endif
