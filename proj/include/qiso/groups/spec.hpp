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

#ifndef QISO_GROUPS_SPEC_HPP
#define QISO_GROUPS_SPEC_HPP

#include "qiso/groups/dihedral.hpp"
#include "qiso/groups/padded.hpp"
#include "qiso/groups/rep.hpp"
#include "qiso/io/linalg_json.hpp"

namespace qiso {

/// Trivial group {e} on n qubits.
inline GroupRepPtr trivial_group(int n) {
    auto d = static_cast<Eigen::Index>(dim_of(n));
    return std::make_shared<ExplicitRep>(n, std::vector<CMatrix>{CMatrix::Identity(d, d)}, "trivial");
}

/// Builds a representation from its JSON description, e.g. {"type":"pauli","n":2},
/// {"type":"cyclic","N":8,"rep":"shift"}, {"type":"explicit","n_qubits":1,"matrices":[...]}.
/// Wrappers nest: {"type":"padded","base":{...},"extra":2}, {"type":"dihedralized","base":{...}}.
inline GroupRepPtr make_group(const Json &spec) {
    return io::guarded("group spec", [&]() -> GroupRepPtr {
        require(spec.is_object() && spec.contains("type"), ErrorKind::Parse, "group spec needs a type");
        std::string type = spec.at("type").get<std::string>();
        if (type == "pauli") {
            return std::make_shared<PauliGroupRep>(spec.at("n").get<int>(), spec.value("phases", true));
        }
        if (type == "clifford") {
            return std::make_shared<CliffordGroupRep>(spec.at("n").get<int>(), spec.value("allow_n3", false));
        }
        if (type == "cyclic") {
            std::string rep = spec.value("rep", "shift");
            require(rep == "shift" || rep == "phase", ErrorKind::Parse, "cyclic rep must be shift or phase");
            return std::make_shared<CyclicRep>(spec.at("N").get<uint64_t>(),
                                               rep == "shift" ? CyclicRep::Kind::Shift : CyclicRep::Kind::Phase);
        }
        if (type == "z2k") {
            return std::make_shared<Z2kRep>(spec.at("k").get<int>());
        }
        if (type == "permutation") {
            return std::make_shared<PermutationRep>(spec.at("n").get<int>());
        }
        if (type == "two_copy_pauli") {
            return two_copy_pauli(spec.at("n").get<int>());
        }
        if (type == "trivial") {
            return trivial_group(spec.at("n").get<int>());
        }
        if (type == "padded") {
            return std::make_shared<PaddedRep>(make_group(spec.at("base")), spec.at("extra").get<int>());
        }
        if (type == "dihedralized") {
            return dihedralize(make_group(spec.at("base")), spec.value("seed", uint64_t{0}));
        }
        if (type == "explicit") {
            int n = spec.at("n_qubits").get<int>();
            std::vector<CMatrix> mats;
            if (spec.contains("matrices")) {
                for (const Json &m : spec.at("matrices")) {
                    mats.push_back(io::matrix_from_json(m));
                }
                return std::make_shared<ExplicitRep>(n, std::move(mats));
            }
            require(spec.contains("generators"), ErrorKind::Parse, "explicit group needs matrices or generators");
            for (const Json &m : spec.at("generators")) {
                mats.push_back(io::matrix_from_json(m));
            }
            return std::make_shared<ExplicitRep>(
                ExplicitRep::from_generators(n, mats, spec.value("cap", static_cast<size_t>(4096))));
        }
        throw Error(ErrorKind::Parse, "unknown group type '" + type + "'");
    });
}

}  // namespace qiso

#endif
