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

#ifndef QISO_PSGI_PAULI_SOLVER_HPP
#define QISO_PSGI_PAULI_SOLVER_HPP

#include <cmath>
#include <random>

#include "qiso/groups/dihedral.hpp"
#include "qiso/linalg/random.hpp"
#include "qiso/psgi/f2.hpp"
#include "qiso/psgi/instance.hpp"

namespace qiso {

struct PauliSolverOptions {
    int m = 2;
    double C = 6.0;
    int T = 0;  // 0 means ceil(C * log2|Gamma|)
    uint64_t seed = 0;
    bool shot_mode = false;
    int shots = 4096;
    int max_qubits = 20;
    size_t max_odd_candidates = 4096;

    void validate() const {
        require(m >= 1, ErrorKind::InvalidArgument, "m must be >= 1");
        require(C > 0, ErrorKind::InvalidArgument, "C must be positive");
        require(T >= 0, ErrorKind::InvalidArgument, "T must be >= 0");
        require(!shot_mode || shots >= 1, ErrorKind::InvalidArgument, "shots must be >= 1");
    }
};

struct FourierSampleRecord {
    uint64_t chi = 0;
    double probability = 0;
    uint64_t seed = 0;
    int n_bits = 0;
};

/// Gamma = Z_2 x (two-copy Pauli labels) acting on m copies of (control qubit + 2n qubits).
/// Bit 0 = a (X on each control), bits 1.. = the two-copy label of two_copy_pauli(n).
/// The k0 generator acts as (-1)^m.
inline std::shared_ptr<PauliGeneratedRep> gamma_group(int n, int m) {
    require(n >= 1 && m >= 1, ErrorKind::InvalidArgument, "gamma_group needs n, m >= 1");
    int per = 2 * n + 1;
    int N = m * per;
    require(N <= 40, ErrorKind::TooLarge, "gamma_group register too large");
    std::vector<PauliOp> gens;
    std::vector<std::string> names;
    PauliOp a(N);
    for (int c = 0; c < m; c++) {
        a = a * PauliOp::single(N, c * per, 'X');
    }
    gens.push_back(a);
    names.push_back("a");
    gens.push_back(PauliOp(N).with_phase((2 * m) % 4));
    names.push_back("k0");
    gens.push_back(PauliOp(N));
    names.push_back("k1");
    for (char letter : {'X', 'Z'}) {
        for (int q = 0; q < n; q++) {
            PauliOp g(N);
            for (int c = 0; c < m; c++) {
                g = g * PauliOp::single(N, c * per + 1 + q, letter) * PauliOp::single(N, c * per + 1 + n + q, letter);
            }
            gens.push_back(g);
            names.push_back(std::string(1, static_cast<char>(std::tolower(letter))) + std::to_string(q));
        }
    }
    return std::make_shared<PauliGeneratedRep>("gamma", N, gens, names);
}

inline uint64_t gamma_label(int a, uint64_t two_copy_label) {
    return static_cast<uint64_t>(a & 1) | (two_copy_label << 1);
}

/// |Phi> = |Psi>^{(x)m}, |Psi> = (|0>|psi1>^{(x)2} + |1>|psi2>^{(x)2})/sqrt2.
inline StateVector build_phi(const StateVector &psi1, const StateVector &psi2, int m) {
    require(psi1.dim() == psi2.dim(), ErrorKind::DimensionMismatch, "state dimension mismatch");
    StateVector psi = controlled_superposition(tensor_power(psi1, 2), tensor_power(psi2, 2));
    return tensor_power(psi, m);
}

/// f(x) = <Phi|rho(x)|Phi> for every x in Gamma.
inline std::vector<double> involution_expectations(const StateVector &phi, const PauliGeneratedRep &gamma) {
    require(phi.dim() == gamma.dim(), ErrorKind::DimensionMismatch, "state does not match Gamma");
    std::vector<double> f(gamma.order());
    for (uint64_t x = 0; x < gamma.order(); x++) {
        Complex v = phi.amplitudes().dot(gamma.apply(x, phi.amplitudes()));
        f[x] = v.real();
    }
    return f;
}

/// In-place Walsh-Hadamard transform (unnormalized).
inline void walsh_hadamard(std::vector<double> &v) {
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t i = 0; i < v.size(); i += 2 * h) {
            for (size_t j = i; j < i + h; j++) {
                double a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

/// prob(chi) = (1/|Gamma|) sum_z (-1)^{chi.z} f(z).
inline std::vector<double> character_distribution(const StateVector &phi, const PauliGeneratedRep &gamma) {
    auto p = involution_expectations(phi, gamma);
    walsh_hadamard(p);
    double inv = 1.0 / static_cast<double>(gamma.order());
    for (auto &x : p) {
        x *= inv;
    }
    return p;
}

inline FourierSampleRecord fourier_sample(const std::vector<double> &dist, Rng &rng) {
    std::vector<double> w(dist.size());
    for (size_t i = 0; i < dist.size(); i++) {
        w[i] = std::max(0.0, dist[i]);
    }
    std::discrete_distribution<uint64_t> pick(w.begin(), w.end());
    FourierSampleRecord r;
    r.chi = pick(rng);
    r.probability = dist[r.chi];
    r.n_bits = log2_exact(dist.size());
    return r;
}

inline FourierSampleRecord fourier_sample(const StateVector &phi, const PauliGeneratedRep &gamma, uint64_t seed) {
    auto dist = character_distribution(phi, gamma);
    Rng rng(seed);
    auto r = fourier_sample(dist, rng);
    r.seed = seed;
    return r;
}

/// Hadamard-test estimate of <Phi|A|Phi> for a Hermitian involution A given as A|Phi>. shots = 0 is
/// exact; otherwise the ancilla is measured `shots` times and 2 p0 - 1 is returned.
inline double hadamard_from_image(const CVector &phi, const CVector &a_phi, int shots, uint64_t seed) {
    require(phi.size() == a_phi.size(), ErrorKind::DimensionMismatch, "hadamard test dimension mismatch");
    Complex f = phi.dot(a_phi);
    require(std::abs(f.imag()) <= 1e-8, ErrorKind::InvalidArgument, "action is not Hermitian on this state");
    double e = std::clamp(f.real(), -1.0, 1.0);
    if (shots <= 0) {
        return e;
    }
    Rng rng(seed);
    std::binomial_distribution<int> b(shots, (1.0 + e) / 2.0);
    return 2.0 * b(rng) / shots - 1.0;
}

inline double hadamard_estimate(const StateVector &phi, const CMatrix &action, int shots, uint64_t seed) {
    require(action.rows() == phi.dim() && action.cols() == phi.dim(), ErrorKind::DimensionMismatch,
            "action dimension mismatch");
    require(is_hermitian(action, 1e-8), ErrorKind::InvalidArgument, "action is not Hermitian");
    require((action * action - CMatrix::Identity(action.rows(), action.cols())).norm() <= 1e-8,
            ErrorKind::InvalidArgument, "action is not an involution");
    return hadamard_from_image(phi.amplitudes(), action * phi.amplitudes(), shots, seed);
}

inline double hadamard_estimate(const StateVector &phi, const GroupRep &rep, uint64_t x, int shots, uint64_t seed) {
    require(rep.multiply(x, x) == 0, ErrorKind::InvalidArgument, "group element is not an involution");
    return hadamard_from_image(phi.amplitudes(), rep.apply(x, phi.amplitudes()), shots, seed);
}

/// Exact simulation of the Fourier-sampling algorithm for PSGI over the phased Pauli group.
inline PsgiVerdict pauli_psgi_quantum(const PsgiInstance &inst, const PauliSolverOptions &opt = {}) {
    inst.validate();
    opt.validate();
    const auto *pg = dynamic_cast<const PauliGroupRep *>(inst.rep.get());
    require(pg != nullptr && !pg->projective(), ErrorKind::InvalidArgument,
            "pauli_psgi_quantum needs the phased Pauli group, got " + inst.rep->name());
    int n = inst.psi1.n_qubits();
    int nq = opt.m * (2 * n + 1);
    require(nq <= opt.max_qubits, ErrorKind::TooLarge,
            "m(2n+1) = " + std::to_string(nq) + " qubits exceeds the memory guard " + std::to_string(opt.max_qubits));

    auto gamma = gamma_group(n, opt.m);
    StateVector phi = build_phi(inst.psi1, inst.psi2, opt.m);
    auto dist = character_distribution(phi, *gamma);
    int K = gamma->num_bits();
    int T = opt.T > 0 ? opt.T : static_cast<int>(std::ceil(opt.C * K));

    Rng rng(derive_seed(opt.seed, 0));
    std::vector<uint64_t> chis;
    chis.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; t++) {
        chis.push_back(fourier_sample(dist, rng).chi);
    }
    auto basis = f2_solve(chis, K);
    auto L = f2_span(basis);
    std::vector<uint64_t> odd;
    for (uint64_t x : L) {
        if (x & 1) {
            odd.push_back(x);
        }
    }
    std::sort(odd.begin(), odd.end());
    if (odd.size() > opt.max_odd_candidates) {
        odd.resize(opt.max_odd_candidates);
    }

    PsgiVerdict v;
    auto &d = v.diagnostics;
    d["mode"] = opt.shot_mode ? "quantum_shots" : "quantum_exact";
    d["m"] = opt.m;
    d["C"] = opt.C;
    d["T"] = T;
    d["gamma_bits"] = K;
    d["seed"] = opt.seed;
    d["characters"] = chis;
    d["kernel_dim"] = basis.size();
    d["odd_candidates"] = odd.size();

    std::vector<double> est(odd.size());
    for (size_t i = 0; i < odd.size(); i++) {
        est[i] = hadamard_estimate(phi, *gamma, odd[i], opt.shot_mode ? opt.shots : 0, derive_seed(opt.seed, 1 + i));
    }
    double best_est = -2;
    for (double e : est) {
        best_est = std::max(best_est, e);
    }
    d["best_estimate"] = odd.empty() ? nlohmann::json(nullptr) : nlohmann::json(best_est);
    if (odd.empty() || best_est < 0.5) {
        v.decision = Decision::No;
        d["reason"] = odd.empty() ? "no odd element in L" : "Hadamard estimate below 1/2";
        return v;
    }

    // Each accepted label fixes P up to i^k; re-evaluate every phase densely.
    v.decision = Decision::Yes;
    bool have = false;
    for (size_t i = 0; i < odd.size(); i++) {
        if (est[i] < 0.5) {
            continue;
        }
        PauliOp base = two_copy_label_to_pauli(n, odd[i] >> 1);
        for (int k = 0; k < 4; k++) {
            PauliOp p = base.with_phase(base.phase_exponent() + k);
            Complex ov = inst.psi1.amplitudes().dot(p.apply(inst.psi2.amplitudes()));
            if (!have || ov.real() > v.achieved_overlap.real()) {
                have = true;
                v.achieved_overlap = ov;
                v.witness = pauli_to_index(p, true);
                d["witness_gamma_label"] = odd[i];
            }
        }
    }
    v.witness_label = inst.rep->label(*v.witness);
    return v;
}

}  // namespace qiso

#endif
