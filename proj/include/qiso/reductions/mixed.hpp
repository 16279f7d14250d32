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

#ifndef QISO_REDUCTIONS_MIXED_HPP
#define QISO_REDUCTIONS_MIXED_HPP

#include "json.hpp"
#include "qiso/groups/padded.hpp"
#include "qiso/linalg/circuit.hpp"
#include "qiso/linalg/metrics.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

/// Mixed-state isomorphism instance: is there g with F(R(g) sigma0 R(g)^dag, sigma1) large?
struct MsgiInstance {
    DensityMatrix sigma0, sigma1;
    GroupRepPtr rep;
    StateVector psi;
    uint64_t seed = 0;
    nlohmann::json diagnostics = nlohmann::json::object();
};

inline DensityMatrix conjugate_density(const GroupRep &rep, uint64_t g, const DensityMatrix &rho) {
    CMatrix u = rep.matrix(g);
    return DensityMatrix::trusted(rho.n_qubits(), u * rho.matrix() * u.adjoint());
}

/// sigma0 = (rho1 + |psi><psi|)/2 and sigma1 = (rho2 + |psi><psi|)/2 with psi from a seeded
/// brick circuit of depth 8n (the design surrogate). Diagnostics record the fidelities the
/// soundness argument bounds.
inline MsgiInstance qsd_to_msgi(const DensityMatrix &rho1, const DensityMatrix &rho2, GroupRepPtr rep, uint64_t seed,
                                int threads = 1) {
    require(rep != nullptr, ErrorKind::InvalidArgument, "qsd_to_msgi needs a group");
    require(rho1.n_qubits() == rho2.n_qubits() && rho1.n_qubits() == rep->n_qubits(), ErrorKind::DimensionMismatch,
            "states and rep must act on the same number of qubits");
    require(rep->order() <= (uint64_t{1} << 16), ErrorKind::TooLarge, "group too large for fidelity diagnostics");
    int n = rho1.n_qubits();
    StateVector psi = run_circuit(random_brick_circuit(n, 8 * n, seed));
    CMatrix pp = psi.amplitudes() * psi.amplitudes().adjoint();
    MsgiInstance out{DensityMatrix::trusted(n, 0.5 * (rho1.matrix() + pp)),
                     DensityMatrix::trusted(n, 0.5 * (rho2.matrix() + pp)), rep, psi, seed};

    uint64_t G = rep->order();
    std::vector<double> fid(G), self(G), four(G);
    parallel_for(G, threads, [&](uint64_t g) {
        fid[g] = sqrt_fidelity(conjugate_density(*rep, g, out.sigma0), out.sigma1);
        StateVector upsi(n, rep->apply(g, psi.amplitudes()));
        DensityMatrix urho = conjugate_density(*rep, g, rho1);
        self[g] = std::abs(psi.amplitudes().dot(upsi.amplitudes()));
        // F(U s0 U^dag, s1) <= (F(U r1 U^dag, r2) + F(U r1 U^dag, psi) + F(U psi, r2) + F(U psi, psi)) / 2.
        four[g] = 0.5 * (sqrt_fidelity(urho, rho2) + sqrt_fidelity(psi, urho) + sqrt_fidelity(upsi, rho2) + self[g]);
    });
    double four_slack = 1.0;
    for (uint64_t g = 0; g < G; g++) {
        four_slack = std::min(four_slack, four[g] - fid[g]);
    }
    double max_non_id = 0, max_self = 0;
    uint64_t arg = 0;
    for (uint64_t g = 1; g < G; g++) {
        if (fid[g] > max_non_id) {
            max_non_id = fid[g];
            arg = g;
        }
        max_self = std::max(max_self, self[g]);
    }
    double mu = max_trace_ratio(*rep);
    auto &d = out.diagnostics;
    d["seed"] = seed;
    d["design_depth"] = 8 * n;
    d["fidelity_identity"] = fid[0];
    d["max_fidelity_non_identity"] = max_non_id;
    d["argmax_non_identity"] = G > 1 ? rep->label(arg) : "";
    d["max_fidelity"] = std::max(fid[0], max_non_id);
    d["mu"] = mu;
    d["bound_half_plus_mu_half"] = 0.5 + mu / 2;
    d["max_self_fidelity_non_identity"] = max_self;
    d["input_trace_distance"] = trace_distance(rho1, rho2);
    d["four_term_bound_min_slack"] = four_slack;
    return out;
}

/// rho = |v1><v1| (x) sigma1 / 2 + |v2><v2| (x) sigma2 / 2 on (label register of R) (x) (system),
/// with R(h)|v1> = |v2>. R'(g) = R(g) (x) I.
struct MixedHspInstance {
    DensityMatrix rho;
    std::shared_ptr<PaddedRep> rep;
    uint64_t h = 0;
    CVector v1, v2;
    DensityMatrix sigma1, sigma2;
};

/// Normalized (I + s R)/2 applied to the first basis vector it does not annihilate; first nonzero
/// amplitude made real positive.
inline CVector involution_eigenvector(const CMatrix &r, int sign) {
    auto d = r.rows();
    CMatrix proj = 0.5 * (CMatrix::Identity(d, d) + static_cast<double>(sign) * r);
    for (Eigen::Index k = 0; k < d; k++) {
        CVector v = proj.col(k);
        double nrm = v.norm();
        if (nrm > 1e-6) {
            v /= nrm;
            for (Eigen::Index i = 0; i < d; i++) {
                if (std::abs(v(i)) > 1e-9) {
                    v *= std::conj(v(i)) / std::abs(v(i));
                    break;
                }
            }
            return v;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "R(h) has no eigenvalue " + std::to_string(sign));
}

inline MixedHspInstance qsd_to_mixed_hsp(const DensityMatrix &sigma1, const DensityMatrix &sigma2, GroupRepPtr rep,
                                         uint64_t h) {
    require(rep != nullptr, ErrorKind::InvalidArgument, "qsd_to_mixed_hsp needs a group");
    require(sigma1.n_qubits() == sigma2.n_qubits(), ErrorKind::DimensionMismatch, "QSD states differ in size");
    require(rep->n_qubits() + sigma1.n_qubits() <= 12, ErrorKind::TooLarge, "mixed HSP instance too large");
    CMatrix r = rep->matrix(h);
    auto d = r.rows();
    require((r * r - CMatrix::Identity(d, d)).norm() <= 1e-8, ErrorKind::InvalidArgument,
            "R(h) is not an involution");
    CVector hp = involution_eigenvector(r, +1), hm = involution_eigenvector(r, -1);
    CVector v1 = (hp + hm) / std::sqrt(2.0), v2 = (hp - hm) / std::sqrt(2.0);
    CMatrix m = 0.5 * kron(CMatrix(v1 * v1.adjoint()), sigma1.matrix()) +
                0.5 * kron(CMatrix(v2 * v2.adjoint()), sigma2.matrix());
    int nq = rep->n_qubits() + sigma1.n_qubits();
    return {DensityMatrix::trusted(nq, m), std::make_shared<PaddedRep>(rep, sigma1.n_qubits()), h, v1, v2, sigma1,
            sigma2};
}

struct TransferIdentity {
    double lhs = 0;  // ||rho - R'(h) rho R'(h)^dag||_1
    double rhs = 0;  // ||sigma1 - sigma2||_1
};

inline TransferIdentity transfer_identity(const MixedHspInstance &inst) {
    CMatrix u = inst.rep->matrix(inst.h);
    CMatrix diff = inst.rho.matrix() - u * inst.rho.matrix() * u.adjoint();
    return {trace_norm_hermitian(diff), trace_norm_hermitian(inst.sigma1.matrix() - inst.sigma2.matrix())};
}

}  // namespace qiso

#endif
