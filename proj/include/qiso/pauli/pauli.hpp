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

#ifndef QISO_PAULI_PAULI_HPP
#define QISO_PAULI_PAULI_HPP

#include <bit>
#include <string>

#include "qiso/linalg/types.hpp"

namespace qiso {

constexpr int kMaxPauliQubits = 32;

inline Complex i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

/// Operator i^phase X^x Z^z. Bit q of x_bits/z_bits belongs to qubit q.
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(int n_qubits) : n_(n_qubits) {
        require(n_qubits >= 0 && n_qubits <= kMaxPauliQubits, ErrorKind::TooLarge, "PauliOp qubit count out of range");
    }
    PauliOp(int n_qubits, int phase_exponent, uint64_t x_bits, uint64_t z_bits) : PauliOp(n_qubits) {
        uint64_t mask = n_qubits == 64 ? ~uint64_t{0} : ((uint64_t{1} << n_qubits) - 1);
        require((x_bits & ~mask) == 0 && (z_bits & ~mask) == 0, ErrorKind::OutOfRange,
                "Pauli bit vector wider than n_qubits");
        phase_ = ((phase_exponent % 4) + 4) % 4;
        x_ = x_bits;
        z_ = z_bits;
    }

    /// Hermitian single-qubit Pauli ('I','X','Y','Z') on qubit q.
    static PauliOp single(int n_qubits, int q, char letter) {
        require(q >= 0 && q < n_qubits, ErrorKind::OutOfRange, "Pauli qubit index out of range");
        uint64_t b = uint64_t{1} << q;
        switch (letter) {
            case 'I':
                return PauliOp(n_qubits);
            case 'X':
                return PauliOp(n_qubits, 0, b, 0);
            case 'Z':
                return PauliOp(n_qubits, 0, 0, b);
            case 'Y':
                return PauliOp(n_qubits, 1, b, b);
            default:
                throw Error(ErrorKind::InvalidArgument, std::string("bad Pauli letter '") + letter + "'");
        }
    }

    /// Hermitian Pauli with the given letter string times a display phase (0:+1, 1:+i, 2:-1, 3:-i).
    static PauliOp from_letters(const std::string &letters, int display_phase = 0) {
        int n = static_cast<int>(letters.size());
        uint64_t x = 0, z = 0;
        int ny = 0;
        for (int q = 0; q < n; q++) {
            char c = letters[static_cast<size_t>(q)];
            uint64_t b = uint64_t{1} << q;
            if (c == 'X') {
                x |= b;
            } else if (c == 'Z') {
                z |= b;
            } else if (c == 'Y') {
                x |= b;
                z |= b;
                ny++;
            } else if (c != 'I' && c != '_') {
                throw Error(ErrorKind::Parse, std::string("bad Pauli letter '") + c + "'");
            }
        }
        return PauliOp(n, display_phase + ny, x, z);
    }

    /// Parses strings like "+iXZI", "-Y", "XX", "-iZ".
    static PauliOp parse(const std::string &s) {
        size_t p = 0;
        int sign = 0;
        if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
            sign = s[p] == '-' ? 2 : 0;
            p++;
        }
        int im = 0;
        if (p < s.size() && s[p] == 'i') {
            im = 1;
            p++;
        }
        return from_letters(s.substr(p), sign + im);
    }

    int n_qubits() const {
        return n_;
    }
    int phase_exponent() const {
        return phase_;
    }
    uint64_t x_bits() const {
        return x_;
    }
    uint64_t z_bits() const {
        return z_;
    }
    bool x(int q) const {
        return (x_ >> q) & 1;
    }
    bool z(int q) const {
        return (z_ >> q) & 1;
    }
    int num_y() const {
        return std::popcount(x_ & z_);
    }
    int num_x() const {
        return std::popcount(x_ & ~z_);
    }
    int num_z() const {
        return std::popcount(z_ & ~x_);
    }
    int weight() const {
        return std::popcount(x_ | z_);
    }
    bool is_identity_up_to_phase() const {
        return x_ == 0 && z_ == 0;
    }

    /// Phase in front of the Hermitian letter string, exponent of i.
    int display_phase() const {
        return ((phase_ - num_y()) % 4 + 4) % 4;
    }
    bool is_hermitian() const {
        return display_phase() % 2 == 0;
    }
    char letter(int q) const {
        static const char tbl[4] = {'I', 'X', 'Z', 'Y'};
        return tbl[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
    }
    std::string letters() const {
        std::string s;
        for (int q = 0; q < n_; q++) {
            s.push_back(letter(q));
        }
        return s;
    }
    std::string str() const {
        static const char *pre[4] = {"+", "+i", "-", "-i"};
        return pre[display_phase()] + letters();
    }

    PauliOp with_phase(int phase_exponent) const {
        PauliOp r = *this;
        r.phase_ = ((phase_exponent % 4) + 4) % 4;
        return r;
    }
    PauliOp negated() const {
        return with_phase(phase_ + 2);
    }
    /// Same letters with display phase +1.
    PauliOp hermitian_part() const {
        return with_phase(num_y());
    }

    bool operator==(const PauliOp &o) const {
        return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
    }

    /// Index masks for the computational basis, where qubit q is bit n-1-q.
    uint64_t x_index_mask() const {
        return to_index_mask(x_);
    }
    uint64_t z_index_mask() const {
        return to_index_mask(z_);
    }

    CMatrix to_matrix() const {
        auto d = static_cast<Eigen::Index>(dim_of(n_));
        CMatrix m = CMatrix::Zero(d, d);
        uint64_t xm = x_index_mask(), zm = z_index_mask();
        Complex ph = i_pow(phase_);
        for (uint64_t b = 0; b < static_cast<uint64_t>(d); b++) {
            double s = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) = ph * s;
        }
        return m;
    }

    CVector apply(const CVector &v) const {
        require(static_cast<uint64_t>(v.size()) == dim_of(n_), ErrorKind::DimensionMismatch,
                "Pauli/vector dimension mismatch");
        CVector out(v.size());
        uint64_t xm = x_index_mask(), zm = z_index_mask();
        Complex ph = i_pow(phase_);
        for (uint64_t b = 0; b < static_cast<uint64_t>(v.size()); b++) {
            double s = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
            out(static_cast<Eigen::Index>(b ^ xm)) = ph * s * v(static_cast<Eigen::Index>(b));
        }
        return out;
    }

   private:
    uint64_t to_index_mask(uint64_t bits) const {
        uint64_t m = 0;
        for (int q = 0; q < n_; q++) {
            if ((bits >> q) & 1) {
                m |= uint64_t{1} << (n_ - 1 - q);
            }
        }
        return m;
    }

    int n_ = 0;
    int phase_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

/// p*q with the phase tracked exactly: X^x1 Z^z1 X^x2 Z^z2 = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}.
inline PauliOp pauli_multiply(const PauliOp &p, const PauliOp &q) {
    require(p.n_qubits() == q.n_qubits(), ErrorKind::DimensionMismatch, "pauli_multiply size mismatch");
    int ph = p.phase_exponent() + q.phase_exponent() + 2 * std::popcount(p.z_bits() & q.x_bits());
    return PauliOp(p.n_qubits(), ph, p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits());
}

inline PauliOp operator*(const PauliOp &p, const PauliOp &q) {
    return pauli_multiply(p, q);
}

/// Symplectic form <p,q> = x_p.z_q + z_p.x_q mod 2.
inline int symplectic_form(const PauliOp &p, const PauliOp &q) {
    require(p.n_qubits() == q.n_qubits(), ErrorKind::DimensionMismatch, "symplectic_form size mismatch");
    return std::popcount((p.x_bits() & q.z_bits()) ^ (p.z_bits() & q.x_bits())) & 1;
}

inline bool pauli_commutes(const PauliOp &p, const PauliOp &q) {
    return symplectic_form(p, q) == 0;
}

/// Size of the phased Pauli group on n qubits, 4^{n+1}.
inline uint64_t phased_pauli_count(int n) {
    require(n >= 0 && n <= 30, ErrorKind::TooLarge, "phased Pauli group too large");
    return uint64_t{1} << (2 * n + 2);
}

/// Element `index` of the phased Pauli group: display phase (+1, +i, -1, -i) is the most
/// significant digit, then letters base 4 (I<X<Y<Z) with qubit 0 most significant.
inline PauliOp pauli_from_index(int n, uint64_t index, bool phased = true) {
    uint64_t letters_count = uint64_t{1} << (2 * n);
    require(index < (phased ? 4 * letters_count : letters_count), ErrorKind::OutOfRange, "Pauli index out of range");
    static const char lt[4] = {'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<size_t>(n), 'I');
    uint64_t rest = index % letters_count;
    for (int q = n - 1; q >= 0; q--) {
        s[static_cast<size_t>(q)] = lt[rest & 3];
        rest >>= 2;
    }
    int dp = static_cast<int>(index / letters_count);
    return PauliOp::from_letters(s, dp);
}

inline uint64_t pauli_to_index(const PauliOp &p, bool phased = true) {
    int n = p.n_qubits();
    uint64_t idx = 0;
    for (int q = 0; q < n; q++) {
        char c = p.letter(q);
        uint64_t digit = c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3;
        idx = idx * 4 + digit;
    }
    if (phased) {
        idx += static_cast<uint64_t>(p.display_phase()) << (2 * n);
    } else {
        require(p.display_phase() == 0, ErrorKind::InvalidArgument, "unphased Pauli index needs display phase +1");
    }
    return idx;
}

}  // namespace qiso

#endif
