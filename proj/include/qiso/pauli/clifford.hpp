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

#ifndef QISO_PAULI_CLIFFORD_HPP
#define QISO_PAULI_CLIFFORD_HPP

#include <optional>
#include <random>

#include "qiso/linalg/circuit.hpp"
#include "qiso/linalg/random.hpp"
#include "qiso/pauli/pauli.hpp"
#include "qiso/pauli/symplectic.hpp"

namespace qiso {

/// Tableau Clifford without global phase: the images C X_q C^dag and C Z_q C^dag.
class CliffordElement {
   public:
    CliffordElement() = default;

    static CliffordElement identity(int n) {
        CliffordElement c;
        c.n_ = n;
        for (int q = 0; q < n; q++) {
            c.xs_.push_back(PauliOp::single(n, q, 'X'));
            c.zs_.push_back(PauliOp::single(n, q, 'Z'));
        }
        return c;
    }

    /// From symplectic rows (interleaved layout, row 2q image of X_q, row 2q+1 image of Z_q) and
    /// 2n sign bits (bit 2q for X_q, bit 2q+1 for Z_q).
    static CliffordElement from_symplectic(int n, const std::vector<uint64_t> &rows, uint64_t signs) {
        require(symp::is_symplectic(rows, n), ErrorKind::InvalidArgument, "matrix is not symplectic");
        CliffordElement c;
        c.n_ = n;
        for (int q = 0; q < n; q++) {
            c.xs_.push_back(row_to_pauli(n, rows[static_cast<size_t>(2 * q)], (signs >> (2 * q)) & 1));
            c.zs_.push_back(row_to_pauli(n, rows[static_cast<size_t>(2 * q + 1)], (signs >> (2 * q + 1)) & 1));
        }
        return c;
    }

    /// From explicit images; checks Hermiticity and the canonical commutation relations.
    static CliffordElement from_images(std::vector<PauliOp> xs, std::vector<PauliOp> zs) {
        CliffordElement c;
        c.n_ = static_cast<int>(xs.size());
        c.xs_ = std::move(xs);
        c.zs_ = std::move(zs);
        c.validate();
        return c;
    }

    static CliffordElement gate(int n, GateKind g, const std::vector<int> &t) {
        CliffordElement c = identity(n);
        auto P = [&](int q, char l) { return PauliOp::single(n, q, l); };
        require(static_cast<int>(t.size()) == gate_arity(g), ErrorKind::InvalidArgument, "wrong gate arity");
        for (int q : t) {
            require(q >= 0 && q < n, ErrorKind::OutOfRange, "gate target out of range");
        }
        int a = t[0];
        switch (g) {
            case GateKind::H:
                c.xs_[a] = P(a, 'Z');
                c.zs_[a] = P(a, 'X');
                break;
            case GateKind::S:
                c.xs_[a] = P(a, 'Y');
                break;
            case GateKind::SDG:
                c.xs_[a] = P(a, 'Y').negated();
                break;
            case GateKind::X:
                c.zs_[a] = P(a, 'Z').negated();
                break;
            case GateKind::Y:
                c.xs_[a] = P(a, 'X').negated();
                c.zs_[a] = P(a, 'Z').negated();
                break;
            case GateKind::Z:
                c.xs_[a] = P(a, 'X').negated();
                break;
            case GateKind::CNOT: {
                int b = t[1];
                c.xs_[a] = P(a, 'X') * P(b, 'X');
                c.zs_[b] = P(a, 'Z') * P(b, 'Z');
                break;
            }
            case GateKind::CZ: {
                int b = t[1];
                c.xs_[a] = P(a, 'X') * P(b, 'Z');
                c.xs_[b] = P(a, 'Z') * P(b, 'X');
                break;
            }
            default:
                throw Error(ErrorKind::Unsupported, std::string("gate ") + gate_name(g) + " is not Clifford");
        }
        return c;
    }

    static CliffordElement swap(int n, int a, int b) {
        require(a >= 0 && a < n && b >= 0 && b < n, ErrorKind::OutOfRange, "swap target out of range");
        CliffordElement c = identity(n);
        std::swap(c.xs_[a], c.xs_[b]);
        std::swap(c.zs_[a], c.zs_[b]);
        return c;
    }

    /// Qubit permutation U with U X_q U^dag = X_{perm[q]}.
    static CliffordElement permutation(const std::vector<int> &perm) {
        int n = static_cast<int>(perm.size());
        CliffordElement c;
        c.n_ = n;
        std::vector<bool> seen(n, false);
        for (int q = 0; q < n; q++) {
            int p = perm[static_cast<size_t>(q)];
            require(p >= 0 && p < n && !seen[p], ErrorKind::InvalidArgument, "not a permutation");
            seen[p] = true;
            c.xs_.push_back(PauliOp::single(n, p, 'X'));
            c.zs_.push_back(PauliOp::single(n, p, 'Z'));
        }
        return c;
    }

    static CliffordElement from_circuit(const Circuit &circ) {
        circ.validate();
        CliffordElement c = identity(circ.n_qubits);
        for (const Gate &g : circ.gates) {
            c = gate(circ.n_qubits, g.kind, g.targets) * c;
        }
        return c;
    }

    int n_qubits() const {
        return n_;
    }
    const PauliOp &x_image(int q) const {
        return xs_.at(static_cast<size_t>(q));
    }
    const PauliOp &z_image(int q) const {
        return zs_.at(static_cast<size_t>(q));
    }

    std::vector<uint64_t> symplectic_rows() const {
        std::vector<uint64_t> rows;
        for (int q = 0; q < n_; q++) {
            rows.push_back(pauli_to_row(xs_[q]));
            rows.push_back(pauli_to_row(zs_[q]));
        }
        return rows;
    }

    uint64_t sign_bits() const {
        uint64_t s = 0;
        for (int q = 0; q < n_; q++) {
            if (xs_[q].display_phase() == 2) {
                s |= uint64_t{1} << (2 * q);
            }
            if (zs_[q].display_phase() == 2) {
                s |= uint64_t{1} << (2 * q + 1);
            }
        }
        return s;
    }

    /// C P C^dag.
    PauliOp conjugate(const PauliOp &p) const {
        require(p.n_qubits() == n_, ErrorKind::DimensionMismatch, "clifford_conjugate size mismatch");
        PauliOp acc = PauliOp(n_).with_phase(p.phase_exponent());
        for (int q = 0; q < n_; q++) {
            if (p.x(q)) {
                acc = acc * xs_[q];
            }
        }
        for (int q = 0; q < n_; q++) {
            if (p.z(q)) {
                acc = acc * zs_[q];
            }
        }
        return acc;
    }

    /// Product as unitaries: (a*b) P (a*b)^dag = a (b P b^dag) a^dag.
    friend CliffordElement operator*(const CliffordElement &a, const CliffordElement &b) {
        require(a.n_ == b.n_, ErrorKind::DimensionMismatch, "clifford product size mismatch");
        CliffordElement c;
        c.n_ = a.n_;
        for (int q = 0; q < a.n_; q++) {
            c.xs_.push_back(a.conjugate(b.xs_[q]));
            c.zs_.push_back(a.conjugate(b.zs_[q]));
        }
        return c;
    }

    CliffordElement inverse() const {
        // Invert the symplectic matrix over F2, then fix signs so that C(C^-1(P)) = P.
        int nn = 2 * n_;
        std::vector<uint64_t> rows = symplectic_rows();
        std::vector<uint64_t> inv(static_cast<size_t>(nn));
        for (int j = 0; j < nn; j++) {
            inv[static_cast<size_t>(j)] = uint64_t{1} << j;
        }
        // Row-reduce to the identity while tracking which original rows were combined.
        std::vector<uint64_t> a = rows;
        for (int col = 0; col < nn; col++) {
            int piv = -1;
            for (int r = col; r < nn; r++) {
                if ((a[static_cast<size_t>(r)] >> col) & 1) {
                    piv = r;
                    break;
                }
            }
            require(piv >= 0, ErrorKind::InvalidArgument, "tableau not invertible");
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
            std::swap(inv[static_cast<size_t>(piv)], inv[static_cast<size_t>(col)]);
            for (int r = 0; r < nn; r++) {
                if (r != col && ((a[static_cast<size_t>(r)] >> col) & 1)) {
                    a[static_cast<size_t>(r)] ^= a[static_cast<size_t>(col)];
                    inv[static_cast<size_t>(r)] ^= inv[static_cast<size_t>(col)];
                }
            }
        }
        // Now a[j] = e_j and inv[j] is the set of rows whose xor gives e_j.
        CliffordElement c;
        c.n_ = n_;
        for (int j = 0; j < nn; j++) {
            PauliOp pre = row_to_pauli(n_, inv[static_cast<size_t>(j)], 0);
            PauliOp img = conjugate(pre);
            if (img.display_phase() == 2) {
                pre = pre.negated();
            }
            (j % 2 == 0 ? c.xs_ : c.zs_).push_back(pre);
        }
        return c;
    }

    bool operator==(const CliffordElement &o) const {
        return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_;
    }

    void validate() const {
        require(static_cast<int>(xs_.size()) == n_ && static_cast<int>(zs_.size()) == n_,
                ErrorKind::DimensionMismatch, "tableau size mismatch");
        for (int q = 0; q < n_; q++) {
            require(xs_[q].n_qubits() == n_ && zs_[q].n_qubits() == n_, ErrorKind::DimensionMismatch,
                    "tableau image size mismatch");
            require(xs_[q].is_hermitian() && zs_[q].is_hermitian(), ErrorKind::InvalidArgument,
                    "tableau images must be Hermitian");
        }
        require(symp::is_symplectic(symplectic_rows(), n_), ErrorKind::InvalidArgument,
                "tableau images violate the commutation relations");
    }

    /// Dense unitary with the canonical phase: the first nonzero amplitude of U|0> is real positive.
    CMatrix to_matrix() const {
        auto d = static_cast<Eigen::Index>(dim_of(n_));
        CMatrix u(d, d);
        for_each_column([&](uint64_t b, const CVector &col) { u.col(static_cast<Eigen::Index>(b)) = col; });
        return u;
    }

    /// U v with the canonical phase, without forming U.
    CVector apply(const CVector &v) const {
        require(static_cast<uint64_t>(v.size()) == dim_of(n_), ErrorKind::DimensionMismatch,
                "Clifford/vector dimension mismatch");
        CVector out = CVector::Zero(v.size());
        for_each_column([&](uint64_t b, const CVector &col) { out += v(static_cast<Eigen::Index>(b)) * col; });
        return out;
    }

    /// Column b of U is X'_{q_k} ... X'_{q_1} U|0> for the set qubits q_1 < ... < q_k of b, where X'
    /// are the X images. Depth-first over b, so only n partial columns are alive at once.
    template <typename F>
    void for_each_column(F &&f) const {
        CVector s = zero_image();
        visit_columns(0, n_, s, f);
    }

    /// U|0^n> with the canonical phase.
    CVector zero_image() const {
        auto d = static_cast<Eigen::Index>(dim_of(n_));
        CVector s;
        for (Eigen::Index start = 0; start < d; start++) {
            CVector v = CVector::Zero(d);
            v(start) = 1.0;
            for (int q = 0; q < n_; q++) {
                v = 0.5 * (v + zs_[q].apply(v));
            }
            double nrm = v.norm();
            if (nrm > 1e-6) {
                s = v / nrm;
                break;
            }
        }
        for (Eigen::Index i = 0; i < d; i++) {
            double a = std::abs(s(i));
            if (a > 1e-9) {
                s *= std::conj(s(i)) / a;
                break;
            }
        }
        return s;
    }

   private:
    // Children of b add an index bit below its lowest set bit (= a qubit above its highest).
    template <typename F>
    void visit_columns(uint64_t b, int low, const CVector &col, F &f) const {
        f(b, col);
        for (int j = 0; j < low; j++) {
            int q = n_ - 1 - j;
            visit_columns(b | (uint64_t{1} << j), j, xs_[static_cast<size_t>(q)].apply(col), f);
        }
    }

    static PauliOp row_to_pauli(int n, uint64_t row, uint64_t sign) {
        uint64_t x = 0, z = 0;
        for (int q = 0; q < n; q++) {
            if ((row >> (2 * q)) & 1) {
                x |= uint64_t{1} << q;
            }
            if ((row >> (2 * q + 1)) & 1) {
                z |= uint64_t{1} << q;
            }
        }
        PauliOp p(n, 0, x, z);
        return p.with_phase(p.num_y() + 2 * static_cast<int>(sign));
    }

    static uint64_t pauli_to_row(const PauliOp &p) {
        uint64_t r = 0;
        for (int q = 0; q < p.n_qubits(); q++) {
            if (p.x(q)) {
                r |= uint64_t{1} << (2 * q);
            }
            if (p.z(q)) {
                r |= uint64_t{1} << (2 * q + 1);
            }
        }
        return r;
    }

    int n_ = 0;
    std::vector<PauliOp> xs_, zs_;
};

inline PauliOp clifford_conjugate(const CliffordElement &c, const PauliOp &p) {
    return c.conjugate(p);
}

inline UnitaryMatrix clifford_to_unitary(const CliffordElement &c) {
    return UnitaryMatrix(c.to_matrix());
}

/// Uniform over Cliffords modulo phase.
inline CliffordElement random_clifford(int n, Rng &rng) {
    auto draw = [&](uint64_t bound) { return std::uniform_int_distribution<uint64_t>(0, bound - 1)(rng); };
    std::vector<uint64_t> rows = symp::random(n, draw);
    uint64_t signs = std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << (2 * n)) - 1)(rng);
    return CliffordElement::from_symplectic(n, rows, signs);
}

inline CliffordElement random_clifford(int n, uint64_t seed) {
    Rng rng(seed);
    return random_clifford(n, rng);
}

/// |C_n| modulo phase = |Sp(2n)| * 4^n.
inline uint64_t clifford_count(int n) {
    require(n >= 1 && n <= 4, ErrorKind::TooLarge, "clifford_count only for n <= 4");
    return symp::group_order(n) << (2 * n);
}

inline CliffordElement clifford_from_index(int n, uint64_t index) {
    uint64_t signs_count = uint64_t{1} << (2 * n);
    std::vector<uint64_t> rows = symp::from_index(n, index / signs_count);
    return CliffordElement::from_symplectic(n, rows, index % signs_count);
}

struct EnumerateOptions {
    // n = 3 has about 9.3e7 elements and must be requested explicitly.
    bool allow_n3 = false;
};

/// Calls f(index, clifford) for every Clifford modulo phase, each exactly once. f may return false
/// to stop early.
template <typename F>
void enumerate_cliffords(int n, F &&f, EnumerateOptions opt = {}) {
    require(n >= 1, ErrorKind::InvalidArgument, "enumerate_cliffords needs n >= 1");
    require(n <= 2 || (n == 3 && opt.allow_n3), ErrorKind::TooLarge,
            "enumerate_cliffords: n = 3 needs allow_n3, n > 3 is not supported");
    uint64_t signs_count = uint64_t{1} << (2 * n);
    uint64_t ns = symp::group_order(n);
    for (uint64_t si = 0; si < ns; si++) {
        std::vector<uint64_t> rows = symp::from_index(n, si);
        for (uint64_t s = 0; s < signs_count; s++) {
            CliffordElement c = CliffordElement::from_symplectic(n, rows, s);
            if constexpr (std::is_same_v<std::invoke_result_t<F, uint64_t, const CliffordElement &>, bool>) {
                if (!f(si * signs_count + s, c)) {
                    return;
                }
            } else {
                f(si * signs_count + s, c);
            }
        }
    }
}

/// perm with C X_q C^dag = +X_perm[q] and C Z_q C^dag = +Z_perm[q], compared exactly.
inline std::optional<std::vector<int>> is_qubit_permutation(const CliffordElement &c) {
    int n = c.n_qubits();
    std::vector<int> perm(static_cast<size_t>(n), -1);
    for (int q = 0; q < n; q++) {
        const PauliOp &x = c.x_image(q);
        if (x.phase_exponent() != 0 || x.z_bits() != 0 || std::popcount(x.x_bits()) != 1) {
            return std::nullopt;
        }
        int p = std::countr_zero(x.x_bits());
        if (c.z_image(q) != PauliOp::single(n, p, 'Z')) {
            return std::nullopt;
        }
        perm[static_cast<size_t>(q)] = p;
    }
    return perm;
}

/// Dense unitary moving the value of qubit q to qubit perm[q].
inline CMatrix qubit_permutation_matrix(const std::vector<int> &perm) {
    int n = static_cast<int>(perm.size());
    auto d = static_cast<Eigen::Index>(dim_of(n));
    CMatrix u = CMatrix::Zero(d, d);
    for (uint64_t b = 0; b < static_cast<uint64_t>(d); b++) {
        uint64_t out = 0;
        for (int q = 0; q < n; q++) {
            if ((b >> (n - 1 - q)) & 1) {
                out |= uint64_t{1} << (n - 1 - perm[static_cast<size_t>(q)]);
            }
        }
        u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return u;
}

inline CVector permute_qubits(const CVector &v, const std::vector<int> &perm) {
    int n = static_cast<int>(perm.size());
    require(static_cast<uint64_t>(v.size()) == dim_of(n), ErrorKind::DimensionMismatch, "permutation size mismatch");
    CVector out(v.size());
    for (uint64_t b = 0; b < static_cast<uint64_t>(v.size()); b++) {
        uint64_t o = 0;
        for (int q = 0; q < n; q++) {
            if ((b >> (n - 1 - q)) & 1) {
                o |= uint64_t{1} << (n - 1 - perm[static_cast<size_t>(q)]);
            }
        }
        out(static_cast<Eigen::Index>(o)) = v(static_cast<Eigen::Index>(b));
    }
    return out;
}

}  // namespace qiso

#endif
