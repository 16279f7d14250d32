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

#ifndef QISO_IO_BUNDLE_HPP
#define QISO_IO_BUNDLE_HPP

#include <fstream>
#include <sstream>

#include "qiso/bosonic/action.hpp"
#include "qiso/bosonic/core_state.hpp"
#include "qiso/groups/spec.hpp"
#include "qiso/io/linalg_json.hpp"
#include "qiso/pauli/clifford.hpp"
#include "qiso/pauli/graph.hpp"
#include "qiso/psgi/instance.hpp"
#include "qiso/psgi/statehsp.hpp"
#include "qiso/reductions/mixed.hpp"

namespace qiso::io {

inline constexpr const char *kBundleSchema = "qiso.bundle";
inline constexpr int kBundleVersion = 1;

// ---- files ----

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json read_json_file(const std::string &path) {
    std::string text = read_text_file(path);
    return guarded("json file", [&] { return Json::parse(text); });
}

/// Pretty-printed with two-space indent and a trailing newline; stable across runs.
inline std::string dump_json(const Json &j) {
    return j.dump(2) + "\n";
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

inline Graph read_edge_list_file(const std::string &path) {
    return Graph::parse_edge_list(read_text_file(path));
}

// ---- small types ----

inline Json to_json(const PauliOp &p) {
    return p.str();
}

inline PauliOp pauli_from_json(const Json &j) {
    return guarded("pauli", [&] { return PauliOp::parse(j.get<std::string>()); });
}

/// {n, rows, signs}: interleaved symplectic rows and the 2n sign bits.
inline Json to_json(const CliffordElement &c) {
    return Json{{"n", c.n_qubits()}, {"rows", c.symplectic_rows()}, {"signs", c.sign_bits()}};
}

inline CliffordElement clifford_from_json(const Json &j) {
    return guarded("clifford", [&] {
        return CliffordElement::from_symplectic(j.at("n").get<int>(), j.at("rows").get<std::vector<uint64_t>>(),
                                                j.at("signs").get<uint64_t>());
    });
}

inline Json to_json(const Graph &g) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back(Json::array({u, v}));
    }
    return Json{{"n", g.n()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json &j) {
    return guarded("graph", [&] {
        std::vector<std::pair<int, int>> edges;
        for (const Json &e : j.at("edges")) {
            require(e.is_array() && e.size() == 2, ErrorKind::Parse, "edge must be a [u, v] pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        int n = j.at("n").get<int>();
        for (auto [u, v] : edges) {
            require(u >= 0 && v >= 0 && u < n && v < n && u != v, ErrorKind::Parse, "bad edge in graph");
        }
        return Graph(n, edges);
    });
}

/// List of {"k": [k_1..k_n], "amp": [re, im]} in multi-index order.
inline Json to_json(const CoreState &c) {
    Json out = Json::array();
    for (const auto &[k, a] : c.amplitudes()) {
        out.push_back(Json{{"k", k}, {"amp", complex_to_json(a)}});
    }
    return out;
}

/// cap < 0 takes the largest photon count present.
inline CoreState core_state_from_json(const Json &j, int cap = -1, CoreState::Norm norm = CoreState::Norm::Check) {
    return guarded("core state", [&] {
        require(j.is_array() && !j.empty(), ErrorKind::Parse, "core state must be a nonempty list of {k, amp}");
        std::map<MultiIndex, Complex> amps;
        int n = -1, top = 0;
        for (const Json &e : j) {
            MultiIndex k = e.at("k").get<MultiIndex>();
            require(n < 0 || static_cast<int>(k.size()) == n, ErrorKind::Parse, "core state multi-index lengths differ");
            n = static_cast<int>(k.size());
            require(amps.count(k) == 0, ErrorKind::Parse, "duplicate multi-index in core state");
            for (int v : k) {
                require(v >= 0, ErrorKind::Parse, "occupations must be nonnegative");
            }
            top = std::max(top, photon_count(k));
            amps[k] = complex_from_json(e.at("amp"));
        }
        return CoreState(n, cap < 0 ? top : cap, std::move(amps), norm);
    });
}

inline Json to_json(const ModeUnitary &v) {
    return matrix_to_json(v.matrix());
}

inline ModeUnitary mode_unitary_from_json(const Json &j) {
    return ModeUnitary(matrix_from_json(j));
}

inline Json to_json(const PsgiVerdict &v) {
    return Json{{"decision", decision_name(v.decision)},
                {"witness_label", v.witness_label},
                {"overlap_re", v.achieved_overlap.real()},
                {"overlap_im", v.achieved_overlap.imag()},
                {"diagnostics", v.diagnostics}};
}

// ---- bundles ----

inline Json bundle_header(const std::string &kind) {
    return Json{{"schema", kBundleSchema}, {"version", kBundleVersion}, {"kind", kind}};
}

inline void check_bundle(const Json &j, const std::string &kind) {
    require(j.is_object(), ErrorKind::Parse, "bundle must be a JSON object");
    require(j.value("schema", std::string()) == kBundleSchema, ErrorKind::Parse, "not a qiso bundle (schema field)");
    require(j.contains("version") && j.at("version").is_number_integer(), ErrorKind::Parse, "bundle has no version");
    int ver = j.at("version").get<int>();
    require(ver == kBundleVersion, ErrorKind::Parse, "unsupported bundle version " + std::to_string(ver));
    std::string got = j.value("kind", std::string());
    require(got == kind, ErrorKind::Parse, "expected a '" + kind + "' bundle, got '" + got + "'");
}

inline std::string bundle_kind(const Json &j) {
    require(j.is_object() && j.contains("kind"), ErrorKind::Parse, "bundle has no kind");
    return j.at("kind").get<std::string>();
}

/// States are stored explicitly; the group is kept as its spec so it can be rebuilt.
inline Json psgi_bundle(const StateVector &psi1, const StateVector &psi2, const Json &group,
                        const DecisionThresholds &thr, const Json &diagnostics = Json::object()) {
    Json b = bundle_header("psgi");
    b["psi1"] = to_json(psi1);
    b["psi2"] = to_json(psi2);
    b["group"] = group;
    b["alpha"] = thr.alpha;
    b["beta"] = thr.beta;
    b["diagnostics"] = diagnostics;
    return b;
}

/// Bundle contents before the group is built, so callers can pick a fallback for groups too large
/// to enumerate.
struct PsgiBundleParts {
    StateVector psi1, psi2;
    Json group;
    DecisionThresholds thresholds;
    Json diagnostics = Json::object();
};

/// Accepts psi1/psi2 state objects or circuit1/circuit2 (run from |0^n>).
inline PsgiBundleParts psgi_parts_from_bundle(const Json &b) {
    check_bundle(b, "psgi");
    return guarded("psgi bundle", [&] {
        auto side = [&](const char *state_key, const char *circuit_key) {
            if (b.contains(state_key)) {
                return state_from_json(b.at(state_key));
            }
            require(b.contains(circuit_key), ErrorKind::Parse,
                    std::string("psgi bundle needs ") + state_key + " or " + circuit_key);
            return run_circuit(circuit_from_json(b.at(circuit_key)));
        };
        PsgiBundleParts p{side("psi1", "circuit1"), side("psi2", "circuit2"), b.at("group"),
                          {b.at("alpha").get<double>(), b.at("beta").get<double>()}};
        require(p.psi1.dim() == p.psi2.dim(), ErrorKind::DimensionMismatch, "bundle states differ in dimension");
        p.thresholds.validate();
        p.diagnostics = b.value("diagnostics", Json::object());
        return p;
    });
}

inline PsgiInstance psgi_from_bundle(const Json &b) {
    PsgiBundleParts p = psgi_parts_from_bundle(b);
    PsgiInstance inst{p.psi1, p.psi2, make_group(p.group), p.thresholds};
    inst.validate();
    return inst;
}

inline Json msgi_bundle(const MsgiInstance &inst, const Json &group) {
    Json b = bundle_header("msgi");
    b["sigma0"] = to_json(inst.sigma0);
    b["sigma1"] = to_json(inst.sigma1);
    b["group"] = group;
    b["psi"] = to_json(inst.psi);
    b["seed"] = inst.seed;
    b["diagnostics"] = inst.diagnostics;
    return b;
}

inline MsgiInstance msgi_from_bundle(const Json &b) {
    check_bundle(b, "msgi");
    return guarded("msgi bundle", [&] {
        MsgiInstance inst{density_from_json(b.at("sigma0")), density_from_json(b.at("sigma1")),
                          make_group(b.at("group")), StateVector::zeros(1)};
        require(inst.sigma0.n_qubits() == inst.sigma1.n_qubits() && inst.sigma0.n_qubits() == inst.rep->n_qubits(),
                ErrorKind::DimensionMismatch, "msgi bundle states and group differ in size");
        if (b.contains("psi")) {
            inst.psi = state_from_json(b.at("psi"));
        } else {
            inst.psi = StateVector::zeros(inst.rep->n_qubits());
        }
        inst.seed = b.value("seed", uint64_t{0});
        inst.diagnostics = b.value("diagnostics", Json::object());
        return inst;
    });
}

/// `base_group` is the spec of R; the bundle stores the padded spec of R' = R (x) I.
inline Json mixed_hsp_bundle(const MixedHspInstance &inst, const Json &base_group) {
    Json b = bundle_header("mixed_hsp");
    b["rho"] = to_json(inst.rho);
    b["group"] = Json{{"type", "padded"}, {"base", base_group}, {"extra", inst.sigma1.n_qubits()}};
    b["h"] = inst.h;
    b["h_label"] = inst.rep->label(inst.h);
    b["v1"] = vector_to_json(inst.v1);
    b["v2"] = vector_to_json(inst.v2);
    b["sigma1"] = to_json(inst.sigma1);
    b["sigma2"] = to_json(inst.sigma2);
    TransferIdentity t = transfer_identity(inst);
    b["diagnostics"] = Json{{"transfer_lhs", t.lhs}, {"transfer_rhs", t.rhs}};
    return b;
}

inline Json statehsp_bundle(const StateHspReduction &r, const Json &base_group) {
    Json b = bundle_header("statehsp");
    b["phi"] = to_json(r.phi);
    b["group"] = Json{{"type", "dihedralized"}, {"base", base_group}};
    b["m"] = r.m;
    b["diagnostics"] = Json{{"epsilon", r.epsilon},
                            {"completeness", r.completeness},
                            {"completeness_linear", r.completeness_linear},
                            {"soundness", r.soundness},
                            {"bounds_hold", r.bounds_hold}};
    return b;
}

struct BosonicBundle {
    CoreState c1, c2;
    DecisionThresholds thresholds;
    Json diagnostics = Json::object();
};

inline Json bosonic_bundle(const BosonicBundle &bb) {
    Json b = bundle_header("bosonic");
    b["n_modes"] = bb.c1.n_modes();
    b["c1"] = to_json(bb.c1);
    b["c2"] = to_json(bb.c2);
    b["alpha"] = bb.thresholds.alpha;
    b["beta"] = bb.thresholds.beta;
    b["diagnostics"] = bb.diagnostics;
    return b;
}

inline BosonicBundle bosonic_from_bundle(const Json &b) {
    check_bundle(b, "bosonic");
    return guarded("bosonic bundle", [&] {
        BosonicBundle bb{core_state_from_json(b.at("c1")), core_state_from_json(b.at("c2")),
                         {b.at("alpha").get<double>(), b.at("beta").get<double>()}};
        require(bb.c1.n_modes() == bb.c2.n_modes(), ErrorKind::DimensionMismatch, "core states differ in mode count");
        bb.diagnostics = b.value("diagnostics", Json::object());
        return bb;
    });
}

}  // namespace qiso::io

#endif
