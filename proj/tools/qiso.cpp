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

// qiso command-line front end. Machine output is JSON (or CSV tables) on stdout or --output; the
// resolved configuration and human summaries go to stderr.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "qiso/bosonic/optimize.hpp"
#include "qiso/bosonic/szk.hpp"
#include "qiso/io/bundle.hpp"
#include "qiso/protocols/interactive.hpp"
#include "qiso/protocols/library.hpp"
#include "qiso/psgi/oracle.hpp"
#include "qiso/psgi/pauli_solver.hpp"
#include "qiso/psgi/statehsp.hpp"
#include "qiso/reductions/gi_clifford.hpp"
#include "qiso/reductions/lowrank_gi.hpp"
#include "qiso/reductions/mixed.hpp"
#include "qiso/verify/checks.hpp"

namespace {

using namespace qiso;
using qiso::io::dump_json;

enum ExitCode : int { kExitYes = 0, kExitNo = 1, kExitConfig = 2, kExitPromise = 3 };

constexpr const char *kExitHelp =
    "Exit codes: 0 = YES (or check passed), 1 = NO (or check failed), 2 = configuration or input error,\n"
    "3 = promise violation. Exit 2 also covers undecidable requests such as NO over a Clifford group too\n"
    "large to enumerate. Relative --output paths resolve against $QISO_OUTPUT_DIR when it is set.";

struct Global {
    int threads = default_threads();
    std::string output;
};

std::string resolve_output(const std::string &path) {
    if (path.empty() || path == "-") {
        return "";
    }
    std::filesystem::path p(path);
    const char *dir = std::getenv("QISO_OUTPUT_DIR");
    if (p.is_relative() && dir != nullptr && *dir != '\0') {
        p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

void emit(const std::string &text, const std::string &path) {
    std::string p = resolve_output(path);
    if (p.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    io::write_text_file(p, text);
    std::cerr << "wrote " << p << "\n";
}

void print_config(const Json &config) {
    std::cerr << "config " << config.dump() << "\n";
}

/// A group given as a type name (with --n), inline JSON, or @file.
Json resolve_group_spec(const std::string &text, int n) {
    if (!text.empty() && text[0] == '{') {
        return io::guarded("group spec", [&] { return Json::parse(text); });
    }
    if (!text.empty() && text[0] == '@') {
        return io::read_json_file(text.substr(1));
    }
    require(n >= 1, ErrorKind::InvalidArgument, "group type '" + text + "' needs --n");
    if (text == "z2k") {
        return Json{{"type", "z2k"}, {"k", n}};
    }
    if (text == "cyclic") {
        return Json{{"type", "cyclic"}, {"N", uint64_t{1} << n}, {"rep", "shift"}};
    }
    if (text == "pauli-unphased") {
        return Json{{"type", "pauli"}, {"n", n}, {"phases", false}};
    }
    for (const char *t : {"pauli", "clifford", "permutation", "two_copy_pauli", "trivial"}) {
        if (text == t) {
            return Json{{"type", text}, {"n", n}};
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown group type '" + text + "'");
}

DensityMatrix load_density(const std::string &path) {
    Json j = io::read_json_file(path);
    if (j.is_object() && j.contains("amplitudes")) {
        StateVector s = io::state_from_json(j);
        return DensityMatrix::trusted(s.n_qubits(), s.amplitudes() * s.amplitudes().adjoint());
    }
    return io::density_from_json(j);
}

Json graph_inputs(const std::string &p1, const std::string &p2) {
    return Json{{"graph1", p1}, {"graph2", p2}};
}

// ---------------------------------------------------------------- psgi

struct PsgiArgs {
    std::string bundle, group, state1, state2;
    int n = 0;
    bool same_state = false, oracle = false, quantum = false, exhaustive3 = false, shot_mode = false;
    std::optional<double> alpha, beta;
    uint64_t seed = 0;
    int m = 2, T = 0, shots = 4096;
    double C = 6.0;
    uint64_t max_order = uint64_t{1} << 22;
};

int run_psgi(const PsgiArgs &a, const Global &g) {
    io::PsgiBundleParts parts;
    Json inputs;
    if (!a.bundle.empty()) {
        require(a.group.empty() && !a.same_state && a.state1.empty(), ErrorKind::InvalidArgument,
                "--bundle cannot be combined with --group, --same-state or --state1/--state2");
        parts = io::psgi_parts_from_bundle(io::read_json_file(a.bundle));
        inputs["bundle"] = a.bundle;
    } else {
        require(!a.group.empty(), ErrorKind::InvalidArgument, "psgi needs --bundle or --group");
        parts.group = resolve_group_spec(a.group, a.n);
        if (a.same_state) {
            require(a.n >= 1, ErrorKind::InvalidArgument, "--same-state needs --n");
            Rng rng(a.seed);
            parts.psi1 = parts.psi2 = haar_state(a.n, rng);
            inputs["states"] = "same Haar state from --seed";
        } else {
            require(!a.state1.empty() && !a.state2.empty(), ErrorKind::InvalidArgument,
                    "psgi needs --same-state or both --state1 and --state2");
            parts.psi1 = io::state_from_json(io::read_json_file(a.state1));
            parts.psi2 = io::state_from_json(io::read_json_file(a.state2));
            inputs["state1"] = a.state1;
            inputs["state2"] = a.state2;
        }
    }
    if (a.alpha) {
        parts.thresholds.alpha = *a.alpha;
    }
    if (a.beta) {
        parts.thresholds.beta = *a.beta;
    }
    parts.thresholds.validate();

    Json spec = parts.group;
    bool fallback = false;
    int cn = 0;
    if (spec.is_object() && spec.value("type", std::string()) == "clifford") {
        cn = spec.at("n").get<int>();
        bool allow = a.exhaustive3 && cn == 3;
        spec["allow_n3"] = allow;
        fallback = cn >= 3 && !allow;
    }
    require(!(fallback && a.quantum), ErrorKind::InvalidArgument, "the quantum solver needs the phased Pauli group");
    GroupRepPtr rep = fallback ? GroupRepPtr(std::make_shared<PermutationRep>(cn)) : make_group(spec);
    require(rep->dim() == parts.psi1.dim(), ErrorKind::DimensionMismatch,
            "group acts on " + std::to_string(rep->n_qubits()) + " qubits but states have " +
                std::to_string(parts.psi1.n_qubits()));

    const bool quantum = a.quantum;
    Json config{{"command", "psgi"},
                {"inputs", inputs},
                {"group", spec},
                {"solver", quantum ? "quantum" : (fallback ? "oracle_permutation_subgroup" : "oracle")},
                {"alpha", parts.thresholds.alpha},
                {"beta", parts.thresholds.beta},
                {"seed", a.seed},
                {"threads", g.threads},
                {"output", resolve_output(g.output)}};
    if (quantum) {
        config["m"] = a.m;
        config["C"] = a.C;
        config["T"] = a.T;
        config["shot_mode"] = a.shot_mode;
        config["shots"] = a.shots;
    }
    print_config(config);

    PsgiVerdict v;
    OracleOptions oo;
    oo.threads = g.threads;
    oo.max_order = a.max_order;
    if (fallback) {
        v = psgi_oracle_subgroup(parts.psi1, parts.psi2, *rep, parts.thresholds, oo);
    } else {
        PsgiInstance inst{parts.psi1, parts.psi2, rep, parts.thresholds};
        if (quantum) {
            PauliSolverOptions po;
            po.m = a.m;
            po.C = a.C;
            po.T = a.T;
            po.seed = a.seed;
            po.shot_mode = a.shot_mode;
            po.shots = a.shots;
            v = pauli_psgi_quantum(inst, po);
        } else {
            v = psgi_oracle(inst, oo);
        }
    }
    emit(dump_json(io::to_json(v)), g.output);
    std::cerr << "decision " << decision_name(v.decision);
    if (!v.witness_label.empty()) {
        std::cerr << " witness " << v.witness_label;
    }
    std::cerr << "\n";
    switch (v.decision) {
        case Decision::Yes:
            return kExitYes;
        case Decision::No:
            return kExitNo;
        case Decision::PromiseViolated:
            return kExitPromise;
    }
    return kExitConfig;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
    std::string graph1, graph2;
    double b = -1;
    std::string rho1, rho2, group, bundle;
    int n = 0, m = 2;
    uint64_t seed = 0, h = 1;
};

int run_reduce_gi_clifford(const ReduceArgs &a, const Global &g) {
    Graph g1 = io::read_edge_list_file(a.graph1), g2 = io::read_edge_list_file(a.graph2);
    print_config(Json{{"command", "reduce gi-clifford"}, {"inputs", graph_inputs(a.graph1, a.graph2)},
                      {"output", resolve_output(g.output)}});
    GiCliffordInstance inst = gi_to_clifford(g1, g2);
    Json diag{{"reduction", "gi-clifford"},
              {"graph1", io::to_json(g1)},
              {"graph2", io::to_json(g2)},
              {"rejected", inst.rejected}};
    if (inst.rejected) {
        diag["reject_reason"] = inst.reject_reason;
    }
    Json group{{"type", "clifford"}, {"n", inst.n_qubits()}};
    emit(dump_json(io::psgi_bundle(inst.psi1, inst.psi2, group, inst.thresholds, diag)), g.output);
    return kExitYes;
}

int run_reduce_gi_lowrank(const ReduceArgs &a, const Global &g) {
    Graph g1 = io::read_edge_list_file(a.graph1), g2 = io::read_edge_list_file(a.graph2);
    print_config(Json{{"command", "reduce gi-lowrank"}, {"inputs", graph_inputs(a.graph1, a.graph2)},
                      {"b", a.b < 0 ? Json("default") : Json(a.b)}, {"output", resolve_output(g.output)}});
    LowRankGiInstance inst = lowrank_gi_instance(g1, g2, a.b);
    Json diag{{"reduction", "gi-lowrank"},
              {"graph1", io::to_json(g1)},
              {"graph2", io::to_json(g2)},
              {"rejected", inst.rejected},
              {"a1", inst.a1},
              {"a2", inst.a2},
              {"b1", inst.b1},
              {"b2", inst.b2},
              {"stabilizer_rank_bound", inst.psi1.rank_bound()}};
    if (inst.rejected) {
        diag["reject_reason"] = inst.reject_reason;
    }
    int n = inst.psi1.n_qubits();
    StateVector s1(n, inst.psi1.materialize()), s2(n, inst.psi2.materialize());
    Json group{{"type", "clifford"}, {"n", n}};
    emit(dump_json(io::psgi_bundle(s1, s2, group, inst.thresholds, diag)), g.output);
    return kExitYes;
}

int run_reduce_gi_bosonic(const ReduceArgs &a, const Global &g) {
    Graph g1 = io::read_edge_list_file(a.graph1), g2 = io::read_edge_list_file(a.graph2);
    require(g1.n() == g2.n(), ErrorKind::InvalidArgument, "graphs must have the same vertex count");
    print_config(Json{{"command", "reduce gi-bosonic"}, {"inputs", graph_inputs(a.graph1, a.graph2)},
                      {"output", resolve_output(g.output)}});
    double n = g1.n();
    io::BosonicBundle bb{encode_graph_bosonic(g1), encode_graph_bosonic(g2),
                         {1.0 - 1.0 / (96.0 * std::pow(n, 5)), 1.0}};
    bb.diagnostics = Json{{"reduction", "gi-bosonic"}, {"graph1", io::to_json(g1)}, {"graph2", io::to_json(g2)}};
    emit(dump_json(io::bosonic_bundle(bb)), g.output);
    return kExitYes;
}

int run_reduce_qsd_msgi(const ReduceArgs &a, const Global &g) {
    DensityMatrix r1 = load_density(a.rho1), r2 = load_density(a.rho2);
    Json spec = resolve_group_spec(a.group, a.n > 0 ? a.n : r1.n_qubits());
    GroupRepPtr rep = make_group(spec);
    print_config(Json{{"command", "reduce qsd-msgi"}, {"inputs", {{"rho1", a.rho1}, {"rho2", a.rho2}}},
                      {"group", spec}, {"seed", a.seed}, {"threads", g.threads},
                      {"output", resolve_output(g.output)}});
    MsgiInstance inst = qsd_to_msgi(r1, r2, rep, a.seed, g.threads);
    emit(dump_json(io::msgi_bundle(inst, spec)), g.output);
    return kExitYes;
}

int run_reduce_qsd_mixedhsp(const ReduceArgs &a, const Global &g) {
    DensityMatrix s1 = load_density(a.rho1), s2 = load_density(a.rho2);
    require(a.n >= 1 || (!a.group.empty() && (a.group[0] == '{' || a.group[0] == '@')), ErrorKind::InvalidArgument,
            "qsd-mixedhsp needs --n for the group register");
    Json spec = resolve_group_spec(a.group, a.n);
    GroupRepPtr rep = make_group(spec);
    print_config(Json{{"command", "reduce qsd-mixedhsp"}, {"inputs", {{"sigma1", a.rho1}, {"sigma2", a.rho2}}},
                      {"group", spec}, {"h", a.h}, {"output", resolve_output(g.output)}});
    MixedHspInstance inst = qsd_to_mixed_hsp(s1, s2, rep, a.h);
    emit(dump_json(io::mixed_hsp_bundle(inst, spec)), g.output);
    return kExitYes;
}

int run_reduce_psgi_statehsp(const ReduceArgs &a, const Global &g) {
    Json b = io::read_json_file(a.bundle);
    PsgiInstance inst = io::psgi_from_bundle(b);
    print_config(Json{{"command", "reduce psgi-statehsp"}, {"inputs", {{"bundle", a.bundle}}}, {"m", a.m},
                      {"output", resolve_output(g.output)}});
    StateHspReduction r = psgi_to_statehsp(inst, a.m);
    emit(dump_json(io::statehsp_bundle(r, b.at("group"))), g.output);
    return kExitYes;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    int n = 2;
    bool exhaustive = false, exhaustive3 = false;
    uint64_t samples = 100000, seed = 1, cases = 0;
    int max_k = 4;
};

int finish_report(const Json &report, const Global &g) {
    emit(dump_json(report), g.output);
    bool pass = report.at("pass").get<bool>();
    std::cerr << report.at("check").get<std::string>() << (pass ? " PASS" : " FAIL") << "\n";
    return pass ? kExitYes : kExitNo;
}

int run_verify(const std::string &check, const VerifyArgs &a, const Global &g) {
    Json config{{"command", "verify " + check}, {"seed", a.seed}, {"threads", g.threads},
                {"output", resolve_output(g.output)}};
    if (check == "lemma-perm") {
        require(a.exhaustive || a.samples >= 1, ErrorKind::InvalidArgument, "need --exhaustive or --samples >= 1");
        if (a.exhaustive) {
            require(a.n <= 2 || (a.n == 3 && a.exhaustive3), ErrorKind::TooLarge,
                    "exhaustive enumeration needs n <= 2 (n = 3 with --exhaustive-clifford-3)");
        }
        config["n"] = a.n;
        config["mode"] = a.exhaustive ? "exhaustive" : "sampled";
        if (!a.exhaustive) {
            config["samples"] = a.samples;
        }
        print_config(config);
        return finish_report(verify::lemma_perm(a.n, a.exhaustive, a.samples, a.seed, g.threads, a.exhaustive3), g);
    }
    if (check == "twirl-bound") {
        uint64_t cases = a.cases ? a.cases : 1000;
        config["instances"] = cases;
        config["max_k"] = a.max_k;
        print_config(config);
        Json bound = verify::twirl_bound(cases, a.seed, g.threads);
        Json decay = verify::k_twirl_decay(a.max_k);
        return finish_report(Json{{"check", "twirl-bound"},
                                  {"bound", bound},
                                  {"k_decay", decay},
                                  {"pass", bound.at("pass").get<bool>() && decay.at("pass").get<bool>()}},
                             g);
    }
    if (check == "helper-gapped-cv") {
        uint64_t cases = a.cases ? a.cases : 500;
        config["cases"] = cases;
        print_config(config);
        return finish_report(verify::helper_gapped(cases, a.seed), g);
    }
    if (check == "trace-transfer") {
        uint64_t cases = a.cases ? a.cases : 200;
        config["cases"] = cases;
        print_config(config);
        return finish_report(verify::trace_transfer(cases, a.seed), g);
    }
    if (check == "shadow-unbiased") {
        uint64_t count = a.cases ? a.cases : 20000;
        config["n"] = a.n;
        config["shadows"] = count;
        print_config(config);
        return finish_report(verify::shadow_unbiased(a.n, count, a.seed), g);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown check '" + check + "'");
}

// ---------------------------------------------------------------- protocol

struct ProtocolArgs {
    std::string instance, bundle, csv, transcripts;
    uint64_t trials = 1000, seed = 1, shadows = 0;
    int k = 3;
    double gamma = 0.1;
    bool list = false;
};

struct ProtocolJob {
    std::string name;
    std::optional<bool> isomorphic;
    std::function<ProtocolTranscript(uint64_t)> round;
    Json info;
};

int run_protocol(const std::string &which, const ProtocolArgs &a, const Global &g) {
    std::vector<ProtocolJob> jobs;
    auto wanted = [&](const std::string &name) { return a.instance.empty() || a.instance == name; };
    Json names = Json::array();
    if (which == "qcszk") {
        auto add = [&](const std::string &name, const PsgiInstance &inst, std::optional<bool> iso) {
            auto p = std::make_shared<QcszkProtocol>(inst, a.shadows);
            jobs.push_back({name, iso, [p](uint64_t s) { return p->round(s); },
                            Json{{"shadows", p->shadows()}, {"group_order", inst.rep->order()}}});
        };
        if (!a.bundle.empty()) {
            add(a.bundle, io::psgi_from_bundle(io::read_json_file(a.bundle)), std::nullopt);
        } else {
            for (const auto &e : qcszk_library()) {
                names.push_back(e.name);
                if (wanted(e.name)) {
                    add(e.name, e.instance, e.isomorphic);
                }
            }
        }
    } else if (which == "qszk-mixed") {
        auto add = [&](const std::string &name, const MsgiInstance &inst, int k, std::optional<bool> iso) {
            auto p = std::make_shared<QszkMixedProtocol>(inst, k);
            jobs.push_back({name, iso, [p](uint64_t s) { return p->round(s); },
                            Json{{"k", k}, {"trace_distance", p->trace_distance()},
                                 {"exact_accept_probability", p->accept_probability()}}});
        };
        if (!a.bundle.empty()) {
            add(a.bundle, io::msgi_from_bundle(io::read_json_file(a.bundle)), a.k, std::nullopt);
        } else {
            for (const auto &e : qszk_mixed_library()) {
                names.push_back(e.name);
                if (wanted(e.name)) {
                    add(e.name, e.instance, e.k, e.isomorphic);
                }
            }
        }
    } else if (which == "szk-lowrank") {
        require(a.bundle.empty(), ErrorKind::InvalidArgument, "szk-lowrank runs on the built-in library only");
        require(a.gamma > 0 && a.gamma < 1, ErrorKind::InvalidArgument, "--gamma must lie in (0, 1)");
        for (const auto &e : szk_lowrank_library()) {
            names.push_back(e.name);
            if (wanted(e.name)) {
                auto p = std::make_shared<SzkLowRankProtocol>(e.instance, a.shadows, a.gamma);
                jobs.push_back({e.name, e.isomorphic, [p](uint64_t s) { return p->round(s); },
                                Json{{"shadows", p->shadows()}, {"gamma", a.gamma}}});
            }
        }
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown protocol '" + which + "'");
    }
    if (a.list) {
        emit(dump_json(names), g.output);
        return kExitYes;
    }
    require(!jobs.empty(), ErrorKind::InvalidArgument, "no library instance named '" + a.instance + "'");
    require(a.trials >= 1, ErrorKind::InvalidArgument, "--trials must be >= 1");

    Json config{{"command", "protocol " + which}, {"trials", a.trials}, {"seed", a.seed},
                {"threads", g.threads},           {"output", resolve_output(g.output)}};
    Json inst_names = Json::array();
    for (const auto &j : jobs) {
        inst_names.push_back(j.name);
    }
    config["instances"] = inst_names;
    if (!a.csv.empty()) {
        config["csv"] = resolve_output(a.csv);
    }
    if (!a.transcripts.empty()) {
        config["transcripts"] = resolve_output(a.transcripts);
    }
    print_config(config);

    std::ostringstream lines;
    std::vector<SummaryRow> rows;
    Json results = Json::array();
    for (const auto &job : jobs) {
        std::function<void(uint64_t, const ProtocolTranscript &)> sink;
        if (!a.transcripts.empty()) {
            sink = [&](uint64_t i, const ProtocolTranscript &t) {
                Json line = to_json(t);
                line["instance"] = job.name;
                line["trial"] = i;
                lines << line.dump() << "\n";
            };
        }
        TrialStats st = run_trials(job.round, a.trials, a.seed, g.threads, sink);
        rows.push_back({job.name, st});
        Json r = to_json(st);
        r["instance"] = job.name;
        if (job.isomorphic) {
            r["isomorphic"] = *job.isomorphic;
        }
        r["info"] = job.info;
        results.push_back(r);
        std::cerr << job.name << ": accept " << st.rate << " [" << st.ci.lo << ", " << st.ci.hi << "]\n";
    }
    if (!a.transcripts.empty()) {
        emit(lines.str(), a.transcripts);
    }
    if (!a.csv.empty()) {
        std::ostringstream csv;
        write_summary_csv(csv, rows);
        emit(csv.str(), a.csv);
    }
    emit(dump_json(Json{{"protocol", which}, {"results", results}}), g.output);
    return kExitYes;
}

// ---------------------------------------------------------------- bosonic

struct BosonicArgs {
    std::string graph, unitary, state, c1, c2, bundle, convention = "substitution", method = "permanent", trace;
    std::string objective = "abs";
    std::optional<uint64_t> haar_seed;
    int restarts = 10, iters = 300;
    uint64_t seed = 1, samples = 20000;
    double sigma = -1, b = -1;
};

ActionConvention parse_convention(const std::string &s) {
    require(s == "substitution" || s == "heisenberg", ErrorKind::InvalidArgument,
            "--convention must be substitution or heisenberg");
    return s == "substitution" ? ActionConvention::Substitution : ActionConvention::Heisenberg;
}

ModeUnitary load_unitary(const BosonicArgs &a, int n) {
    if (a.haar_seed) {
        require(a.unitary.empty(), ErrorKind::InvalidArgument, "give --unitary or --haar-seed, not both");
        return haar_mode_unitary(n, *a.haar_seed);
    }
    require(!a.unitary.empty(), ErrorKind::InvalidArgument, "need --unitary or --haar-seed");
    ModeUnitary v = io::mode_unitary_from_json(io::read_json_file(a.unitary));
    require(v.n() == n, ErrorKind::DimensionMismatch, "unitary size does not match the mode count");
    return v;
}

std::pair<CoreState, CoreState> load_pair(const BosonicArgs &a, DecisionThresholds *thr) {
    if (!a.bundle.empty()) {
        require(a.c1.empty() && a.c2.empty(), ErrorKind::InvalidArgument, "--bundle cannot be combined with --c1/--c2");
        io::BosonicBundle bb = io::bosonic_from_bundle(io::read_json_file(a.bundle));
        if (thr) {
            *thr = bb.thresholds;
        }
        return {bb.c1, bb.c2};
    }
    require(!a.c1.empty() && !a.c2.empty(), ErrorKind::InvalidArgument, "need --bundle or both --c1 and --c2");
    CoreState c1 = io::core_state_from_json(io::read_json_file(a.c1));
    CoreState c2 = io::core_state_from_json(io::read_json_file(a.c2));
    require(c1.n_modes() == c2.n_modes(), ErrorKind::DimensionMismatch, "core states differ in mode count");
    if (thr) {
        double n = c1.n_modes();
        *thr = {1.0 - 1.0 / (96.0 * std::pow(n, 5)), 1.0};
    }
    return {c1, c2};
}

Json pair_inputs(const BosonicArgs &a) {
    return a.bundle.empty() ? Json{{"c1", a.c1}, {"c2", a.c2}} : Json{{"bundle", a.bundle}};
}

int run_bosonic(const std::string &cmd, const BosonicArgs &a, const Global &g) {
    Json config{{"command", "bosonic " + cmd}, {"output", resolve_output(g.output)}};
    if (cmd == "encode") {
        Graph gr = io::read_edge_list_file(a.graph);
        config["inputs"] = Json{{"graph", a.graph}};
        print_config(config);
        emit(dump_json(io::to_json(encode_graph_bosonic(gr))), g.output);
        return kExitYes;
    }
    if (cmd == "apply") {
        CoreState c = io::core_state_from_json(io::read_json_file(a.state));
        ModeUnitary v = load_unitary(a, c.n_modes());
        ActionConvention conv = parse_convention(a.convention);
        require(a.method == "permanent" || a.method == "substitution", ErrorKind::InvalidArgument,
                "--method must be permanent or substitution");
        config["inputs"] = Json{{"state", a.state}, {"unitary", a.unitary}};
        config["convention"] = a.convention;
        config["method"] = a.method;
        if (a.haar_seed) {
            config["haar_seed"] = *a.haar_seed;
        }
        print_config(config);
        CoreState out = a.method == "permanent" ? apply_linear_optical(v, c, conv) : apply_by_substitution(v, c, conv);
        emit(dump_json(io::to_json(out)), g.output);
        return kExitYes;
    }
    if (cmd == "overlap") {
        auto [c1, c2] = load_pair(a, nullptr);
        ModeUnitary v = load_unitary(a, c1.n_modes());
        ActionConvention conv = parse_convention(a.convention);
        config["inputs"] = pair_inputs(a);
        config["convention"] = a.convention;
        print_config(config);
        Complex o = transformed_overlap(v, c1, c2, conv);
        emit(dump_json(Json{{"overlap_re", o.real()}, {"overlap_im", o.imag()}, {"overlap_abs", std::abs(o)}}),
             g.output);
        return kExitYes;
    }
    if (cmd == "optimize") {
        DecisionThresholds thr;
        auto [c1, c2] = load_pair(a, &thr);
        require(a.objective == "abs" || a.objective == "real", ErrorKind::InvalidArgument,
                "--objective must be abs or real");
        require(a.restarts >= 1 && a.iters >= 1, ErrorKind::InvalidArgument, "restarts and iters must be >= 1");
        OverlapOptions opt;
        opt.restarts = a.restarts;
        opt.iters = a.iters;
        opt.seed = a.seed;
        opt.threads = g.threads;
        opt.objective = a.objective == "abs" ? OverlapObjective::Abs : OverlapObjective::Real;
        config["inputs"] = pair_inputs(a);
        config["restarts"] = a.restarts;
        config["iters"] = a.iters;
        config["seed"] = a.seed;
        config["objective"] = a.objective;
        config["threads"] = g.threads;
        config["alpha"] = thr.alpha;
        if (!a.trace.empty()) {
            config["trace"] = resolve_output(a.trace);
        }
        print_config(config);
        OverlapResult r = optimize_overlap(c1, c2, opt);
        PermutationPhase pp = nearest_permutation_phase(r.v);
        Json out{{"abs_overlap", r.abs_overlap},
                 {"re_overlap", r.re_overlap},
                 {"best_restart", r.best_restart},
                 {"converged_restarts", r.converged_restarts},
                 {"alpha", thr.alpha},
                 {"exceeds_alpha", r.abs_overlap > thr.alpha},
                 {"unitary", io::to_json(r.v)},
                 {"nearest_permutation", pp.perm},
                 {"permutation_residual", pp.residual}};
        if (!a.trace.empty()) {
            std::ostringstream csv;
            write_trace_csv(csv, r.trace);
            emit(csv.str(), a.trace);
        }
        emit(dump_json(out), g.output);
        std::cerr << "best |overlap| " << r.abs_overlap << " (alpha " << thr.alpha << ")\n";
        return kExitYes;
    }
    if (cmd == "tv-gap") {
        auto [c1, c2] = load_pair(a, nullptr);
        require(a.samples >= 1, ErrorKind::InvalidArgument, "--samples must be >= 1");
        TvGapOptions opt;
        opt.b = a.b;
        opt.threads = g.threads;
        config["inputs"] = pair_inputs(a);
        config["sigma"] = a.sigma < 0 ? Json("default") : Json(a.sigma);
        config["b"] = a.b < 0 ? Json("optimized") : Json(a.b);
        config["samples"] = a.samples;
        config["seed"] = a.seed;
        config["threads"] = g.threads;
        print_config(config);
        double sigma = a.sigma;
        if (sigma < 0) {
            if (opt.b < 0) {
                opt.b = orbit_distance_estimate(c1, c2, a.seed, opt.b_restarts, g.threads);
            }
            sigma = szk_default_sigma(opt.b, c1.n_modes(), std::max(c1.cap(), c2.cap()));
        }
        TvGapResult r = estimate_tv_gap(c1, c2, sigma, a.samples, a.seed, opt);
        emit(dump_json(Json{{"advantage", r.estimate.advantage},
                            {"ci_lo", r.estimate.ci_lo},
                            {"ci_hi", r.estimate.ci_hi},
                            {"tv_lower_bound", r.estimate.tv_lower_bound()},
                            {"samples_per_side", r.estimate.samples_per_side},
                            {"b", r.b},
                            {"threshold", r.threshold},
                            {"sigma", r.sigma},
                            {"dimension", r.dimension},
                            {"in_region_1", r.in_region_1},
                            {"in_region_2", r.in_region_2}}),
             g.output);
        return kExitYes;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown bosonic command '" + cmd + "'");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qiso: state isomorphism problems at desk scale"};
    app.footer(kExitHelp);
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--threads", g.threads, "worker threads (default: logical cores)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("-o,--output", g.output, "write the main JSON result here instead of stdout");

    // psgi
    PsgiArgs pa;
    auto *psgi = app.add_subcommand("psgi", "decide a PSGI instance (exit 0 YES, 1 NO, 3 promise violated)");
    psgi->add_option("--bundle", pa.bundle, "psgi instance bundle (JSON)")->check(CLI::ExistingFile);
    psgi->add_option("--group", pa.group, "group: type name (pauli, clifford, ...), inline JSON, or @file");
    psgi->add_option("--n", pa.n, "qubit count for a named group")->check(CLI::Range(1, 12));
    auto *same = psgi->add_flag("--same-state", pa.same_state, "use one seeded Haar state on both sides");
    psgi->add_option("--state1", pa.state1, "first state (JSON)")->check(CLI::ExistingFile)->excludes(same);
    psgi->add_option("--state2", pa.state2, "second state (JSON)")->check(CLI::ExistingFile)->excludes(same);
    auto *orc = psgi->add_flag("--oracle", pa.oracle, "exact enumeration over the group (default)");
    psgi->add_flag("--quantum", pa.quantum, "simulated quantum algorithm (phased Pauli group)")->excludes(orc);
    psgi->add_option("--alpha", pa.alpha, "NO threshold override");
    psgi->add_option("--beta", pa.beta, "YES threshold override");
    psgi->add_option("--seed", pa.seed, "seed for --same-state and the quantum solver")->capture_default_str();
    psgi->add_option("--m", pa.m, "copies in the quantum solver")->capture_default_str();
    psgi->add_option("--C", pa.C, "Fourier sample constant (T = C log2|Gamma|)")->capture_default_str();
    psgi->add_option("--T", pa.T, "explicit Fourier sample count (0 = from --C)")->capture_default_str();
    psgi->add_flag("--shot-mode", pa.shot_mode, "estimate Hadamard tests with finite shots");
    psgi->add_option("--shots", pa.shots, "shots per Hadamard test")->capture_default_str();
    psgi->add_flag("--exhaustive-clifford-3", pa.exhaustive3, "enumerate the full 3-qubit Clifford group");
    psgi->add_option("--max-order", pa.max_order, "oracle enumeration cap")->capture_default_str();

    // reduce
    ReduceArgs ra;
    auto *reduce = app.add_subcommand("reduce", "write an instance bundle produced by a reduction");
    reduce->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App *>> reductions;
    for (const char *name : {"gi-clifford", "gi-lowrank", "gi-bosonic"}) {
        auto *s = reduce->add_subcommand(name, std::string("graph pair -> ") + name + " instance");
        s->add_option("graph1", ra.graph1, "edge-list file")->required()->check(CLI::ExistingFile);
        s->add_option("graph2", ra.graph2, "edge-list file")->required()->check(CLI::ExistingFile);
        if (std::string(name) == "gi-lowrank") {
            s->add_option("--b", ra.b, "graph-state weight b in (0, 1) (default from n)");
        }
        reductions.emplace_back(name, s);
    }
    {
        auto *s = reduce->add_subcommand("qsd-msgi", "QSD pair -> mixed-state isomorphism instance");
        s->add_option("--rho1", ra.rho1, "first state (density or pure JSON)")->required()->check(CLI::ExistingFile);
        s->add_option("--rho2", ra.rho2, "second state")->required()->check(CLI::ExistingFile);
        s->add_option("--group", ra.group, "group name, inline JSON, or @file")->required();
        s->add_option("--n", ra.n, "group qubit count (default: state size)");
        s->add_option("--seed", ra.seed, "seed of the padding state")->capture_default_str();
        reductions.emplace_back("qsd-msgi", s);
    }
    {
        auto *s = reduce->add_subcommand("qsd-mixedhsp", "QSD pair -> mixed-state hidden subgroup instance");
        s->add_option("--sigma1", ra.rho1, "first state")->required()->check(CLI::ExistingFile);
        s->add_option("--sigma2", ra.rho2, "second state")->required()->check(CLI::ExistingFile);
        s->add_option("--group", ra.group, "group name, inline JSON, or @file")->required();
        s->add_option("--n", ra.n, "group qubit count");
        s->add_option("--involution", ra.h, "group index of the involution h")->capture_default_str();
        reductions.emplace_back("qsd-mixedhsp", s);
    }
    {
        auto *s = reduce->add_subcommand("psgi-statehsp", "abelian psgi bundle -> state hidden subgroup instance");
        s->add_option("bundle", ra.bundle, "psgi bundle")->required()->check(CLI::ExistingFile);
        s->add_option("--m", ra.m, "copies")->capture_default_str();
        reductions.emplace_back("psgi-statehsp", s);
    }

    // verify
    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "run a seeded property check (exit 0 pass, 1 fail)");
    verify_cmd->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App *>> checks;
    for (const char *name : {"lemma-perm", "twirl-bound", "helper-gapped-cv", "trace-transfer", "shadow-unbiased"}) {
        auto *s = verify_cmd->add_subcommand(name, std::string("check ") + name);
        s->add_option("--seed", va.seed, "base seed")->capture_default_str();
        std::string nm = name;
        if (nm == "lemma-perm") {
            s->add_option("--n", va.n, "qubits")->capture_default_str()->check(CLI::Range(1, 12));
            s->add_flag("--exhaustive", va.exhaustive, "enumerate the Clifford group");
            s->add_option("--samples", va.samples, "sampled Cliffords when not exhaustive")->capture_default_str();
            s->add_flag("--exhaustive-clifford-3", va.exhaustive3, "allow n = 3 enumeration");
        } else if (nm == "shadow-unbiased") {
            s->add_option("--n", va.n, "qubits")->capture_default_str()->check(CLI::Range(1, kMaxShadowQubits));
            s->add_option("--shadows", va.cases, "shadow count (default 20000)");
        } else {
            s->add_option("--cases", va.cases, "instance count (default 1000 / 500 / 200)");
            if (nm == "twirl-bound") {
                s->add_option("--max-k", va.max_k, "largest k in the decay check")->capture_default_str()
                    ->check(CLI::Range(1, 4));
            }
        }
        checks.emplace_back(name, s);
    }

    // protocol
    ProtocolArgs pr;
    auto *protocol = app.add_subcommand("protocol", "run interactive-proof rounds and report acceptance rates");
    protocol->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App *>> protocols;
    for (const char *name : {"qcszk", "qszk-mixed", "szk-lowrank"}) {
        auto *s = protocol->add_subcommand(name, std::string(name) + " protocol");
        s->add_option("--instance", pr.instance, "library instance name (default: all)");
        s->add_flag("--list", pr.list, "print library instance names");
        s->add_option("--trials", pr.trials, "rounds per instance")->capture_default_str();
        s->add_option("--seed", pr.seed, "base seed (trial i uses a derived seed)")->capture_default_str();
        s->add_option("--csv", pr.csv, "write the summary table as CSV");
        s->add_option("--transcripts", pr.transcripts, "write one JSON line per round");
        std::string nm = name;
        if (nm != "szk-lowrank") {
            s->add_option("--bundle", pr.bundle, nm == "qcszk" ? "psgi bundle" : "msgi bundle")
                ->check(CLI::ExistingFile);
        }
        if (nm == "qszk-mixed") {
            s->add_option("--k", pr.k, "copies for a --bundle instance")->capture_default_str();
        } else {
            s->add_option("--shadows", pr.shadows, "shadows per round (0 = default)")->capture_default_str();
        }
        if (nm == "szk-lowrank") {
            s->add_option("--gamma", pr.gamma, "prover failure budget")->capture_default_str();
        }
        protocols.emplace_back(name, s);
    }

    // bosonic
    BosonicArgs ba;
    auto *bosonic = app.add_subcommand("bosonic", "linear-optical isomorphism tools");
    bosonic->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App *>> bcmds;
    {
        auto *s = bosonic->add_subcommand("encode", "graph -> core state");
        s->add_option("graph", ba.graph, "edge-list file")->required()->check(CLI::ExistingFile);
        bcmds.emplace_back("encode", s);
    }
    auto add_unitary = [&](CLI::App *s) {
        s->add_option("--unitary", ba.unitary, "mode unitary (row-major JSON matrix)")->check(CLI::ExistingFile);
        s->add_option("--haar-seed", ba.haar_seed, "use a seeded Haar unitary instead");
        s->add_option("--convention", ba.convention, "substitution | heisenberg")->capture_default_str();
    };
    auto add_pair = [&](CLI::App *s) {
        s->add_option("--bundle", ba.bundle, "bosonic bundle")->check(CLI::ExistingFile);
        s->add_option("--c1", ba.c1, "first core state")->check(CLI::ExistingFile);
        s->add_option("--c2", ba.c2, "second core state")->check(CLI::ExistingFile);
    };
    {
        auto *s = bosonic->add_subcommand("apply", "apply a mode unitary to a core state");
        s->add_option("--state", ba.state, "core state")->required()->check(CLI::ExistingFile);
        s->add_option("--method", ba.method, "permanent | substitution")->capture_default_str();
        add_unitary(s);
        bcmds.emplace_back("apply", s);
    }
    {
        auto *s = bosonic->add_subcommand("overlap", "<c2|R(V)|c1>");
        add_pair(s);
        add_unitary(s);
        bcmds.emplace_back("overlap", s);
    }
    {
        auto *s = bosonic->add_subcommand("optimize", "maximize |<c2|R(V)|c1>| over mode unitaries");
        add_pair(s);
        s->add_option("--restarts", ba.restarts, "restarts")->capture_default_str();
        s->add_option("--iters", ba.iters, "iterations per restart")->capture_default_str();
        s->add_option("--seed", ba.seed, "base seed")->capture_default_str();
        s->add_option("--objective", ba.objective, "abs | real")->capture_default_str();
        s->add_option("--trace", ba.trace, "write the best-value trace as CSV");
        bcmds.emplace_back("optimize", s);
    }
    {
        auto *s = bosonic->add_subcommand("tv-gap", "estimate the sampler total-variation advantage");
        add_pair(s);
        s->add_option("--sigma", ba.sigma, "noise scale (default b / n^(r/2))");
        s->add_option("--b", ba.b, "orbit distance (default: from the optimizer)");
        s->add_option("--samples", ba.samples, "samples per side")->capture_default_str();
        s->add_option("--seed", ba.seed, "base seed")->capture_default_str();
        bcmds.emplace_back("tv-gap", s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*psgi) {
            return run_psgi(pa, g);
        }
        for (auto &[name, s] : reductions) {
            if (!*s) {
                continue;
            }
            if (name == "gi-clifford") return run_reduce_gi_clifford(ra, g);
            if (name == "gi-lowrank") return run_reduce_gi_lowrank(ra, g);
            if (name == "gi-bosonic") return run_reduce_gi_bosonic(ra, g);
            if (name == "qsd-msgi") return run_reduce_qsd_msgi(ra, g);
            if (name == "qsd-mixedhsp") return run_reduce_qsd_mixedhsp(ra, g);
            return run_reduce_psgi_statehsp(ra, g);
        }
        for (auto &[name, s] : checks) {
            if (*s) {
                return run_verify(name, va, g);
            }
        }
        for (auto &[name, s] : protocols) {
            if (*s) {
                return run_protocol(name, pr, g);
            }
        }
        for (auto &[name, s] : bcmds) {
            if (*s) {
                return run_bosonic(name, ba, g);
            }
        }
    } catch (const qiso::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
