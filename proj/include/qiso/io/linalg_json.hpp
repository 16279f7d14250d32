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

#ifndef QISO_IO_LINALG_JSON_HPP
#define QISO_IO_LINALG_JSON_HPP

#include "json.hpp"
#include "qiso/linalg/circuit.hpp"
#include "qiso/linalg/types.hpp"

namespace qiso {

using Json = nlohmann::json;

namespace io {

template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
    }
}

inline Json complex_to_json(Complex c) {
    return Json::array({c.real(), c.imag()});
}

inline Complex complex_from_json(const Json &j) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorKind::Parse,
            "complex number must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_to_json(const CVector &v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        a.push_back(complex_to_json(v(i)));
    }
    return a;
}

inline CVector vector_from_json(const Json &j) {
    require(j.is_array(), ErrorKind::Parse, "amplitude list must be an array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); i++) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    }
    return v;
}

/// Row-major nested arrays of [re, im].
inline Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json &j) {
    require(j.is_array() && !j.empty() && j[0].is_array(), ErrorKind::Parse, "matrix must be a nested array");
    auto r = static_cast<Eigen::Index>(j.size());
    auto c = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; i++) {
        const Json &row = j[static_cast<size_t>(i)];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == c, ErrorKind::Parse, "ragged matrix");
        for (Eigen::Index k = 0; k < c; k++) {
            m(i, k) = complex_from_json(row[static_cast<size_t>(k)]);
        }
    }
    return m;
}

inline Json to_json(const StateVector &s) {
    return Json{{"n_qubits", s.n_qubits()}, {"amplitudes", vector_to_json(s.amplitudes())}};
}

inline StateVector state_from_json(const Json &j) {
    return guarded("state", [&] {
        require(j.is_object() && j.contains("n_qubits") && j.contains("amplitudes"), ErrorKind::Parse,
                "state needs n_qubits and amplitudes");
        return StateVector(j.at("n_qubits").get<int>(), vector_from_json(j.at("amplitudes")));
    });
}

inline Json to_json(const DensityMatrix &r) {
    return Json{{"n_qubits", r.n_qubits()}, {"matrix", matrix_to_json(r.matrix())}};
}

inline DensityMatrix density_from_json(const Json &j) {
    return guarded("density matrix", [&] {
        require(j.is_object() && j.contains("n_qubits") && j.contains("matrix"), ErrorKind::Parse,
                "density matrix needs n_qubits and matrix");
        return DensityMatrix(j.at("n_qubits").get<int>(), matrix_from_json(j.at("matrix")));
    });
}

inline Json to_json(const Circuit &c) {
    Json gates = Json::array();
    for (const Gate &g : c.gates) {
        gates.push_back(Json{{"gate", gate_name(g.kind)}, {"targets", g.targets}});
    }
    Json out{{"n_qubits", c.n_qubits}, {"gates", gates}};
    if (!c.traced.empty()) {
        out["traced"] = c.traced;
    }
    return out;
}

inline Circuit circuit_from_json(const Json &j) {
    return guarded("circuit", [&] {
        require(j.is_object() && j.contains("n_qubits"), ErrorKind::Parse, "circuit needs n_qubits");
        Circuit c(j.at("n_qubits").get<int>());
        if (j.contains("gates")) {
            for (const Json &g : j.at("gates")) {
                std::string name = g.at("gate").get<std::string>();
                auto kind = parse_gate_name(name);
                require(kind.has_value(), ErrorKind::Parse, "unknown gate '" + name + "'");
                c.add(*kind, g.at("targets").get<std::vector<int>>());
            }
        }
        if (j.contains("traced")) {
            c.traced = j.at("traced").get<std::vector<int>>();
        }
        c.validate();
        return c;
    });
}

}  // namespace io
}  // namespace qiso

#endif
