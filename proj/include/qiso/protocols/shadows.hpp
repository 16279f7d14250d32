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

#ifndef QISO_PROTOCOLS_SHADOWS_HPP
#define QISO_PROTOCOLS_SHADOWS_HPP

#include "json.hpp"
#include "qiso/pauli/clifford.hpp"
#include "qiso/util/stats.hpp"

namespace qiso {

/// One global-Clifford classical shadow: C drawn uniformly, computational-basis outcome b of C|psi>.
struct ShadowRecord {
    CliffordElement clifford;
    uint64_t bits = 0;
    uint64_t seed = 0;

    int n_qubits() const {
        return clifford.n_qubits();
    }
};

inline constexpr int kMaxShadowQubits = 4;

/// Samples an index from the Born distribution |v_b|^2.
inline uint64_t sample_born(const CVector &v, Rng &rng) {
    double u = std::uniform_real_distribution<double>(0.0, v.squaredNorm())(rng);
    double acc = 0;
    uint64_t last = 0;
    for (Eigen::Index b = 0; b < v.size(); b++) {
        double p = std::norm(v(b));
        if (p > 0) {
            last = static_cast<uint64_t>(b);
        }
        acc += p;
        if (u < acc) {
            return static_cast<uint64_t>(b);
        }
    }
    return last;
}

/// N shadows of psi; record t uses seed derive_seed(seed, t).
inline std::vector<ShadowRecord> clifford_shadow(const StateVector &psi, uint64_t count, uint64_t seed) {
    int n = psi.n_qubits();
    require(n >= 1 && n <= kMaxShadowQubits, ErrorKind::TooLarge, "clifford shadows support 1 <= n <= 4 qubits");
    std::vector<ShadowRecord> out;
    out.reserve(count);
    for (uint64_t t = 0; t < count; t++) {
        uint64_t s = derive_seed(seed, t);
        Rng rng(s);
        CliffordElement c = random_clifford(n, rng);
        uint64_t b = sample_born(c.apply(psi.amplitudes()), rng);
        out.push_back({std::move(c), b, s});
    }
    return out;
}

/// <b|C|phi>.
inline Complex shadow_amplitude(const ShadowRecord &r, const CVector &phi) {
    return r.clifford.apply(phi)(static_cast<Eigen::Index>(r.bits));
}

/// <phi| ((2^n + 1) C^dag |b><b| C - I) |phi> for a unit vector phi.
inline double shadow_single_estimate(const ShadowRecord &r, const CVector &phi) {
    double d = static_cast<double>(dim_of(r.n_qubits()));
    return (d + 1) * std::norm(shadow_amplitude(r, phi)) - phi.squaredNorm();
}

/// 2 ceil(ln(2M / delta)) buckets, clipped to [1, N].
inline int shadow_bucket_count(size_t targets, size_t shadows, double delta) {
    require(delta > 0 && delta < 1, ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
    auto k = static_cast<size_t>(2 * std::ceil(std::log(2.0 * static_cast<double>(std::max<size_t>(targets, 1)) / delta)));
    return static_cast<int>(std::clamp<size_t>(k, 1, std::max<size_t>(shadows, 1)));
}

/// Median-of-means estimates of |<phi_i|psi>|^2 for every target.
inline std::vector<double> fidelity_from_shadows(const std::vector<ShadowRecord> &shadows,
                                                 const std::vector<StateVector> &targets, double delta = 0.05) {
    require(!shadows.empty(), ErrorKind::InvalidArgument, "no shadows given");
    int n = shadows.front().n_qubits();
    for (const auto &t : targets) {
        require(t.n_qubits() == n, ErrorKind::DimensionMismatch, "targets must match the shadow qubit count");
    }
    int k = shadow_bucket_count(targets.size(), shadows.size(), delta);
    std::vector<double> out;
    std::vector<double> xs(shadows.size());
    for (const auto &t : targets) {
        for (size_t i = 0; i < shadows.size(); i++) {
            xs[i] = shadow_single_estimate(shadows[i], t.amplitudes());
        }
        out.push_back(median_of_means(xs, k));
    }
    return out;
}

inline std::string bits_string(uint64_t bits, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; q++) {
        if ((bits >> (n - 1 - q)) & 1) {
            s[static_cast<size_t>(q)] = '1';
        }
    }
    return s;
}

inline nlohmann::json to_json(const ShadowRecord &r) {
    return {{"clifford", {{"rows", r.clifford.symplectic_rows()}, {"signs", r.clifford.sign_bits()}}},
            {"bits", bits_string(r.bits, r.n_qubits())},
            {"seed", r.seed}};
}

}  // namespace qiso

#endif
