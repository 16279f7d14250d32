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

#ifndef QISO_BOSONIC_CORE_STATE_HPP
#define QISO_BOSONIC_CORE_STATE_HPP

#include <map>
#include <numeric>

#include "qiso/linalg/types.hpp"
#include "qiso/pauli/graph.hpp"

namespace qiso {

/// Occupation numbers (k_1 ... k_n).
using MultiIndex = std::vector<int>;

inline int photon_count(const MultiIndex &k) {
    return std::accumulate(k.begin(), k.end(), 0);
}

/// prod_i k_i!
inline double multi_factorial(const MultiIndex &k) {
    double f = 1;
    for (int v : k) {
        for (int i = 2; i <= v; i++) {
            f *= i;
        }
    }
    return f;
}

/// All occupations of n modes with exactly r photons, in lexicographically decreasing order
/// ((r,0,...) first).
inline std::vector<MultiIndex> sector_basis(int n, int r) {
    require(n >= 1 && r >= 0, ErrorKind::InvalidArgument, "sector_basis needs n >= 1, r >= 0");
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto &&self, int mode, int left) -> void {
        if (mode == n - 1) {
            cur[static_cast<size_t>(mode)] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; v--) {
            cur[static_cast<size_t>(mode)] = v;
            self(self, mode + 1, left - v);
        }
    };
    rec(rec, 0, r);
    return out;
}

/// Fock-space polynomial P(z) = sum_k p_k z^k with psi_k = p_k sqrt(k!).
using Poly = std::map<MultiIndex, Complex>;

/// A bosonic state with finite Fock support: sparse Fock amplitudes over n modes with at most
/// `cap` photons.
class CoreState {
   public:
    CoreState() = default;
    enum class Norm { Check, Normalize, Keep };

    CoreState(int n_modes, int cap, std::map<MultiIndex, Complex> amps, Norm mode = Norm::Check)
        : n_(n_modes), cap_(cap), amps_(std::move(amps)) {
        require(n_ >= 1 && cap_ >= 0, ErrorKind::InvalidArgument, "core state needs n >= 1 modes and cap >= 0");
        for (auto it = amps_.begin(); it != amps_.end();) {
            require(static_cast<int>(it->first.size()) == n_, ErrorKind::DimensionMismatch,
                    "multi-index length does not match mode count");
            for (int v : it->first) {
                require(v >= 0, ErrorKind::InvalidArgument, "occupations must be nonnegative");
            }
            require(photon_count(it->first) <= cap_, ErrorKind::OutOfRange, "multi-index exceeds photon cap");
            it = it->second == Complex(0) ? amps_.erase(it) : std::next(it);
        }
        double nrm = norm();
        if (mode == Norm::Keep) {
            return;
        }
        if (mode == Norm::Normalize) {
            require(nrm > 0, ErrorKind::InvalidArgument, "cannot normalize the zero core state");
            for (auto &[k, a] : amps_) {
                a /= nrm;
            }
        } else {
            require(std::abs(nrm - 1) <= kTol, ErrorKind::InvalidArgument,
                    "core state not normalized (norm " + std::to_string(nrm) + ")");
        }
    }

    static CoreState from_poly(int n_modes, int cap, const Poly &p, Norm mode = Norm::Check) {
        std::map<MultiIndex, Complex> a;
        for (const auto &[k, c] : p) {
            a[k] = c * std::sqrt(multi_factorial(k));
        }
        return CoreState(n_modes, cap, std::move(a), mode);
    }

    int n_modes() const {
        return n_;
    }
    int cap() const {
        return cap_;
    }
    const std::map<MultiIndex, Complex> &amplitudes() const {
        return amps_;
    }
    Complex amplitude(const MultiIndex &k) const {
        auto it = amps_.find(k);
        return it == amps_.end() ? Complex(0) : it->second;
    }
    double norm() const {
        double s = 0;
        for (const auto &[k, a] : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
    /// Photon numbers with nonzero weight, ascending.
    std::vector<int> sectors() const {
        std::vector<int> s;
        for (const auto &[k, a] : amps_) {
            s.push_back(photon_count(k));
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }
    double sector_weight(int r) const {
        double w = 0;
        for (const auto &[k, a] : amps_) {
            if (photon_count(k) == r) {
                w += std::norm(a);
            }
        }
        return w;
    }
    Poly to_poly() const {
        Poly p;
        for (const auto &[k, a] : amps_) {
            p[k] = a / std::sqrt(multi_factorial(k));
        }
        return p;
    }

   private:
    int n_ = 0;
    int cap_ = 0;
    std::map<MultiIndex, Complex> amps_;
};

/// <c1|c2>.
inline Complex core_overlap(const CoreState &c1, const CoreState &c2) {
    require(c1.n_modes() == c2.n_modes(), ErrorKind::DimensionMismatch, "core states differ in mode count");
    Complex s = 0;
    for (const auto &[k, a] : c1.amplitudes()) {
        s += std::conj(a) * c2.amplitude(k);
    }
    return s;
}

/// Amplitudes of c over the concatenated bases of `sectors`.
inline CVector core_to_vector(const CoreState &c, const std::vector<int> &sectors) {
    std::vector<Complex> v;
    for (int r : sectors) {
        for (const auto &k : sector_basis(c.n_modes(), r)) {
            v.push_back(c.amplitude(k));
        }
    }
    return Eigen::Map<CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline uint64_t sector_dimension(int n, int r) {
    // C(n + r - 1, r)
    uint64_t num = 1, den = 1;
    for (int i = 1; i <= r; i++) {
        num *= static_cast<uint64_t>(n + r - i);
        den *= static_cast<uint64_t>(i);
    }
    return num / den;
}

/// Amplitude 1/sqrt(2n) on each |3_i> and 1/sqrt(2|E|) on each |1_i 1_j> for an edge ij.
/// Graphs without edges are rejected.
inline CoreState encode_graph_bosonic(const Graph &g) {
    int n = g.n();
    auto edges = g.edges();
    require(n >= 1, ErrorKind::InvalidArgument, "graph needs at least one vertex");
    require(!edges.empty(), ErrorKind::InvalidArgument, "graph has no edges; the encoding rejects it");
    std::map<MultiIndex, Complex> a;
    double cube = 1.0 / std::sqrt(2.0 * n), edge = 1.0 / std::sqrt(2.0 * static_cast<double>(edges.size()));
    for (int i = 0; i < n; i++) {
        MultiIndex k(static_cast<size_t>(n), 0);
        k[static_cast<size_t>(i)] = 3;
        a[k] = cube;
    }
    for (auto [u, v] : edges) {
        MultiIndex k(static_cast<size_t>(n), 0);
        k[static_cast<size_t>(u)] = 1;
        k[static_cast<size_t>(v)] = 1;
        a[k] = edge;
    }
    return CoreState(n, 3, std::move(a));
}

/// (1/sqrt n) sum_i |3_i>.
inline CoreState cubic_core_state(int n) {
    std::map<MultiIndex, Complex> a;
    for (int i = 0; i < n; i++) {
        MultiIndex k(static_cast<size_t>(n), 0);
        k[static_cast<size_t>(i)] = 3;
        a[k] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return CoreState(n, 3, std::move(a));
}

}  // namespace qiso

#endif
