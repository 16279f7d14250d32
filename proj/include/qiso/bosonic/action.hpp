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

#ifndef QISO_BOSONIC_ACTION_HPP
#define QISO_BOSONIC_ACTION_HPP

#include <random>

#include "qiso/bosonic/core_state.hpp"
#include "qiso/linalg/random.hpp"

namespace qiso {

/// An n x n unitary acting on n bosonic modes.
class ModeUnitary {
   public:
    ModeUnitary() = default;
    explicit ModeUnitary(CMatrix v, double tol = 1e-8) : v_(std::move(v)) {
        require(v_.rows() == v_.cols() && v_.rows() >= 1, ErrorKind::DimensionMismatch, "mode unitary must be square");
        double err = (v_.adjoint() * v_ - CMatrix::Identity(v_.rows(), v_.cols())).norm();
        require(err <= tol, ErrorKind::NotUnitary, "mode unitary violates V^dag V = I (error " + std::to_string(err) + ")");
    }
    static ModeUnitary identity(int n) {
        return ModeUnitary(CMatrix::Identity(n, n));
    }
    /// Permutation matrix with V(i, perm[i]) = 1.
    static ModeUnitary permutation(const std::vector<int> &perm) {
        auto n = static_cast<Eigen::Index>(perm.size());
        CMatrix v = CMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; i++) {
            v(i, perm[static_cast<size_t>(i)]) = 1;
        }
        return ModeUnitary(std::move(v));
    }
    int n() const {
        return static_cast<int>(v_.rows());
    }
    const CMatrix &matrix() const {
        return v_;
    }

   private:
    CMatrix v_;
};

/// Haar-random mode unitary (Ginibre QR with the diagonal phase correction).
inline ModeUnitary haar_mode_unitary(int n, uint64_t seed) {
    require(n >= 1, ErrorKind::InvalidArgument, "haar_mode_unitary needs n >= 1");
    Rng rng(seed);
    return ModeUnitary(haar_unitary_matrix(n, rng));
}

/// How R(V) is attached to V.
/// Substitution: P_out(z) = P_in(V z), i.e. a^dag_i -> sum_j V_ij a^dag_j. Then R(V)R(W) = R(WV).
/// Heisenberg: R(V) = Substitution(V^T), the homomorphic choice matching U^dag a_i U = sum_j V_ij a_j.
enum class ActionConvention { Substitution, Heisenberg };

/// Permanent by Ryser's formula with Gray-code order. Square matrices up to 20 x 20.
inline Complex permanent(const CMatrix &a) {
    require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "permanent needs a square matrix");
    auto n = static_cast<int>(a.rows());
    require(n <= 20, ErrorKind::TooLarge, "permanent limited to 20 x 20");
    if (n == 0) {
        return 1;
    }
    std::vector<Complex> rowsum(static_cast<size_t>(n), 0);
    Complex total = 0;
    uint64_t gray = 0;
    for (uint64_t k = 1; k < (uint64_t{1} << n); k++) {
        uint64_t g = k ^ (k >> 1);
        int col = std::countr_zero(g ^ gray);
        double sgn = (g >> col) & 1 ? 1.0 : -1.0;
        for (int i = 0; i < n; i++) {
            rowsum[static_cast<size_t>(i)] += sgn * a(i, col);
        }
        gray = g;
        Complex prod = 1;
        for (int i = 0; i < n; i++) {
            prod *= rowsum[static_cast<size_t>(i)];
        }
        total += (std::popcount(g) % 2 == n % 2 ? 1.0 : -1.0) * prod;
    }
    return total;
}

/// Mode list with mode i repeated k_i times.
inline std::vector<int> expand_modes(const MultiIndex &k) {
    std::vector<int> out;
    for (size_t i = 0; i < k.size(); i++) {
        for (int c = 0; c < k[i]; c++) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

/// <k|R(V)|j> = perm(M[modes of j, modes of k]) / sqrt(j! k!) with M = V (substitution) or V^T.
inline Complex transition_amplitude(const CMatrix &m, const MultiIndex &j, const MultiIndex &k) {
    if (photon_count(j) != photon_count(k)) {
        return 0;
    }
    auto rows = expand_modes(j), cols = expand_modes(k);
    auto r = static_cast<Eigen::Index>(rows.size());
    CMatrix sub(r, r);
    for (Eigen::Index a = 0; a < r; a++) {
        for (Eigen::Index b = 0; b < r; b++) {
            sub(a, b) = m(rows[static_cast<size_t>(a)], cols[static_cast<size_t>(b)]);
        }
    }
    return permanent(sub) / std::sqrt(multi_factorial(j) * multi_factorial(k));
}

inline CMatrix convention_matrix(const ModeUnitary &v, ActionConvention conv) {
    return conv == ActionConvention::Substitution ? v.matrix() : CMatrix(v.matrix().transpose());
}

namespace detail {
inline constexpr double kDropTol = 1e-15;
}

/// R(V)|c> via the permanent formula, sector by sector.
inline CoreState apply_linear_optical(const ModeUnitary &v, const CoreState &c,
                                      ActionConvention conv = ActionConvention::Substitution) {
    require(v.n() == c.n_modes(), ErrorKind::DimensionMismatch, "mode unitary and core state differ in mode count");
    CMatrix m = convention_matrix(v, conv);
    std::map<MultiIndex, Complex> out;
    for (int r : c.sectors()) {
        for (const auto &k : sector_basis(c.n_modes(), r)) {
            Complex s = 0;
            for (const auto &[j, a] : c.amplitudes()) {
                if (photon_count(j) == r) {
                    s += transition_amplitude(m, j, k) * a;
                }
            }
            if (std::abs(s) > detail::kDropTol) {
                out[k] = s;
            }
        }
    }
    // Kept unnormalized so callers can check norm preservation.
    return CoreState(c.n_modes(), c.cap(), std::move(out), CoreState::Norm::Keep);
}

// Polynomial arithmetic in the stellar picture.

inline Poly poly_mul(const Poly &a, const Poly &b) {
    Poly out;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            MultiIndex k = ka;
            for (size_t i = 0; i < k.size(); i++) {
                k[i] += kb[i];
            }
            out[k] += ca * cb;
        }
    }
    return out;
}

/// d/dz_i.
inline Poly poly_derivative(const Poly &p, int i) {
    Poly out;
    for (const auto &[k, c] : p) {
        auto ii = static_cast<size_t>(i);
        if (k[ii] > 0) {
            MultiIndex kk = k;
            kk[ii]--;
            out[kk] += c * static_cast<double>(k[ii]);
        }
    }
    return out;
}

/// Q(z) = P(M z): z_i -> sum_l M_il z_l.
inline Poly poly_substitute(const Poly &p, const CMatrix &m) {
    auto n = static_cast<int>(m.rows());
    std::vector<Poly> lin(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        for (int l = 0; l < n; l++) {
            if (m(i, l) != Complex(0)) {
                MultiIndex e(static_cast<size_t>(n), 0);
                e[static_cast<size_t>(l)] = 1;
                lin[static_cast<size_t>(i)][e] = m(i, l);
            }
        }
    }
    Poly out;
    for (const auto &[k, c] : p) {
        Poly term{{MultiIndex(static_cast<size_t>(n), 0), c}};
        for (int i = 0; i < n; i++) {
            for (int e = 0; e < k[static_cast<size_t>(i)]; e++) {
                term = poly_mul(term, lin[static_cast<size_t>(i)]);
            }
        }
        for (const auto &[kk, cc] : term) {
            out[kk] += cc;
        }
    }
    return out;
}

/// Fock inner product <P|Q> = sum_k conj(p_k) q_k k!.
inline Complex poly_inner(const Poly &p, const Poly &q) {
    Complex s = 0;
    const Poly &small = p.size() <= q.size() ? p : q;
    const Poly &large = p.size() <= q.size() ? q : p;
    for (const auto &[k, c] : small) {
        auto it = large.find(k);
        if (it != large.end()) {
            Complex pc = &small == &p ? c : it->second;
            Complex qc = &small == &p ? it->second : c;
            s += std::conj(pc) * qc * multi_factorial(k);
        }
    }
    return s;
}

/// R(V)|c> via the polynomial substitution route (independent of the permanent formula).
inline CoreState apply_by_substitution(const ModeUnitary &v, const CoreState &c,
                                       ActionConvention conv = ActionConvention::Substitution) {
    require(v.n() == c.n_modes(), ErrorKind::DimensionMismatch, "mode unitary and core state differ in mode count");
    Poly q = poly_substitute(c.to_poly(), convention_matrix(v, conv));
    for (auto it = q.begin(); it != q.end();) {
        it = std::abs(it->second) * std::sqrt(multi_factorial(it->first)) <= detail::kDropTol ? q.erase(it)
                                                                                                : std::next(it);
    }
    return CoreState::from_poly(c.n_modes(), c.cap(), q, CoreState::Norm::Keep);
}

/// <c2|R(V)|c1>.
inline Complex transformed_overlap(const ModeUnitary &v, const CoreState &c1, const CoreState &c2,
                                   ActionConvention conv = ActionConvention::Substitution) {
    return core_overlap(c2, apply_linear_optical(v, c1, conv));
}

}  // namespace qiso

#endif
