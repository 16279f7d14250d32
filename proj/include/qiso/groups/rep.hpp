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

#ifndef QISO_GROUPS_REP_HPP
#define QISO_GROUPS_REP_HPP

#include <map>
#include <memory>
#include <numbers>
#include <numeric>

#include "qiso/linalg/random.hpp"
#include "qiso/pauli/clifford.hpp"
#include "qiso/pauli/pauli.hpp"

namespace qiso {

struct DecisionThresholds {
    double alpha = 0.6;
    double beta = 0.99;

    void validate() const {
        require(0 <= alpha && alpha < beta && beta <= 1, ErrorKind::InvalidArgument,
                "thresholds need 0 <= alpha < beta <= 1 (alpha=" + std::to_string(alpha) +
                    ", beta=" + std::to_string(beta) + ")");
    }
};

/// Finite group with a unitary representation on n qubits. Elements are indices in [0, order());
/// index 0 is the identity.
class GroupRep {
   public:
    virtual ~GroupRep() = default;

    virtual std::string name() const = 0;
    virtual uint64_t order() const = 0;
    virtual int n_qubits() const = 0;
    virtual CMatrix matrix(uint64_t g) const = 0;
    virtual uint64_t multiply(uint64_t a, uint64_t b) const = 0;
    virtual uint64_t inverse(uint64_t a) const = 0;

    virtual CVector apply(uint64_t g, const CVector &v) const {
        return matrix(g) * v;
    }
    virtual std::string label(uint64_t g) const {
        return g == 0 ? "identity" : "g" + std::to_string(g);
    }
    /// True when R(a)R(b) equals R(ab) only up to a global phase.
    virtual bool projective() const {
        return false;
    }
    /// Known abelian by construction; otherwise is_abelian() checks numerically.
    virtual bool abelian_by_construction() const {
        return false;
    }

    Eigen::Index dim() const {
        return static_cast<Eigen::Index>(dim_of(n_qubits()));
    }

    void check_element(uint64_t g) const {
        require(g < order(), ErrorKind::OutOfRange,
                "group element " + std::to_string(g) + " outside order " + std::to_string(order()));
    }
};

using GroupRepPtr = std::shared_ptr<const GroupRep>;

/// Phased Pauli group (4^{n+1} elements) or, with phased=false, the projective 4^n quotient.
class PauliGroupRep : public GroupRep {
   public:
    explicit PauliGroupRep(int n, bool phased = true) : n_(n), phased_(phased) {
        require(n >= 1 && n <= 12, ErrorKind::TooLarge, "Pauli group needs 1 <= n <= 12");
    }
    std::string name() const override {
        return phased_ ? "pauli" : "pauli_unphased";
    }
    uint64_t order() const override {
        return phased_ ? phased_pauli_count(n_) : (uint64_t{1} << (2 * n_));
    }
    int n_qubits() const override {
        return n_;
    }
    PauliOp element(uint64_t g) const {
        check_element(g);
        return pauli_from_index(n_, g, phased_);
    }
    CMatrix matrix(uint64_t g) const override {
        return element(g).to_matrix();
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        return element(g).apply(v);
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        PauliOp p = element(a) * element(b);
        return pauli_to_index(phased_ ? p : p.hermitian_part(), phased_);
    }
    uint64_t inverse(uint64_t a) const override {
        PauliOp p = element(a);
        // (i^k P)^-1 = i^-k P for Hermitian letters P.
        PauliOp inv = p.with_phase(2 * p.num_y() - p.phase_exponent());
        return pauli_to_index(phased_ ? inv : inv.hermitian_part(), phased_);
    }
    std::string label(uint64_t g) const override {
        return g == 0 ? "identity" : element(g).str();
    }
    bool projective() const override {
        return !phased_;
    }

   private:
    int n_;
    bool phased_;
};

/// Clifford group modulo phase with canonical-phase dense matrices (a projective representation).
class CliffordGroupRep : public GroupRep {
   public:
    explicit CliffordGroupRep(int n, bool allow_n3 = false) : n_(n) {
        require(n >= 1 && (n <= 2 || (n == 3 && allow_n3)), ErrorKind::TooLarge,
                "clifford group rep is enumerable only for n <= 2 (n = 3 behind a flag)");
        order_ = clifford_count(n);
        if (n <= 2) {
            enumerate_cliffords(n, [&](uint64_t idx, const CliffordElement &c) {
                index_[{c.symplectic_rows(), c.sign_bits()}] = idx;
                elems_.push_back(c);
                mats_.push_back(c.to_matrix());
            });
        }
    }
    std::string name() const override {
        return "clifford";
    }
    uint64_t order() const override {
        return order_;
    }
    int n_qubits() const override {
        return n_;
    }
    CliffordElement element(uint64_t g) const {
        check_element(g);
        return elems_.empty() ? clifford_from_index(n_, g) : elems_[g];
    }
    CMatrix matrix(uint64_t g) const override {
        check_element(g);
        return mats_.empty() ? clifford_from_index(n_, g).to_matrix() : mats_[g];
    }
    uint64_t index_of(const CliffordElement &c) const {
        require(!index_.empty(), ErrorKind::Unsupported, "clifford index lookup needs n <= 2");
        return index_.at({c.symplectic_rows(), c.sign_bits()});
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        return index_of(element(a) * element(b));
    }
    uint64_t inverse(uint64_t a) const override {
        return index_of(element(a).inverse());
    }
    std::string label(uint64_t g) const override {
        if (g == 0) {
            return "identity";
        }
        return describe(element(g));
    }
    static std::string describe(const CliffordElement &c) {
        std::string s = "clifford[";
        for (int q = 0; q < c.n_qubits(); q++) {
            s += (q ? "," : "") + std::string("X") + std::to_string(q) + "->" + c.x_image(q).str() + ",Z" +
                 std::to_string(q) + "->" + c.z_image(q).str();
        }
        return s + "]";
    }
    bool projective() const override {
        return true;
    }

   private:
    int n_;
    uint64_t order_;
    std::vector<CliffordElement> elems_;
    std::vector<CMatrix> mats_;
    std::map<std::pair<std::vector<uint64_t>, uint64_t>, uint64_t> index_;
};

/// Z_N acting either by cyclic shift |x> -> |x+g> (N = 2^n) or by phases diag(w^{g x}).
class CyclicRep : public GroupRep {
   public:
    enum class Kind { Shift, Phase };
    CyclicRep(uint64_t N, Kind kind) : N_(N), kind_(kind) {
        require(N >= 1 && N <= (uint64_t{1} << 16), ErrorKind::TooLarge, "cyclic group order out of range");
        if (kind == Kind::Shift) {
            n_ = log2_exact(N);
            require(n_ >= 1, ErrorKind::InvalidArgument, "shift representation needs N a power of two, N >= 2");
        } else {
            n_ = 1;
            while ((uint64_t{1} << n_) < N) {
                n_++;
            }
        }
    }
    std::string name() const override {
        return kind_ == Kind::Shift ? "cyclic_shift" : "cyclic_phase";
    }
    uint64_t order() const override {
        return N_;
    }
    int n_qubits() const override {
        return n_;
    }
    CMatrix matrix(uint64_t g) const override {
        check_element(g);
        auto d = dim();
        CMatrix m = CMatrix::Zero(d, d);
        for (Eigen::Index x = 0; x < d; x++) {
            if (kind_ == Kind::Shift) {
                m((x + static_cast<Eigen::Index>(g)) % d, x) = 1.0;
            } else {
                m(x, x) = phase(g, static_cast<uint64_t>(x));
            }
        }
        return m;
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        check_element(g);
        auto d = dim();
        CVector out(d);
        for (Eigen::Index x = 0; x < d; x++) {
            if (kind_ == Kind::Shift) {
                out((x + static_cast<Eigen::Index>(g)) % d) = v(x);
            } else {
                out(x) = phase(g, static_cast<uint64_t>(x)) * v(x);
            }
        }
        return out;
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        return (a + b) % N_;
    }
    uint64_t inverse(uint64_t a) const override {
        return (N_ - a % N_) % N_;
    }
    bool abelian_by_construction() const override {
        return true;
    }

   private:
    Complex phase(uint64_t g, uint64_t x) const {
        uint64_t e = (g * x) % N_;
        return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(N_));
    }
    uint64_t N_;
    Kind kind_;
    int n_;
};

/// Z_2^k acting by X^a on k qubits (bit q of a is qubit q).
class Z2kRep : public GroupRep {
   public:
    explicit Z2kRep(int k) : k_(k) {
        require(k >= 1 && k <= 16, ErrorKind::TooLarge, "z2k needs 1 <= k <= 16");
    }
    std::string name() const override {
        return "z2k";
    }
    uint64_t order() const override {
        return uint64_t{1} << k_;
    }
    int n_qubits() const override {
        return k_;
    }
    PauliOp element(uint64_t g) const {
        check_element(g);
        return PauliOp(k_, 0, g, 0);
    }
    CMatrix matrix(uint64_t g) const override {
        return element(g).to_matrix();
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        return element(g).apply(v);
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        return a ^ b;
    }
    uint64_t inverse(uint64_t a) const override {
        return a;
    }
    std::string label(uint64_t g) const override {
        return g == 0 ? "identity" : element(g).str();
    }
    bool abelian_by_construction() const override {
        return true;
    }

   private:
    int k_;
};

/// Elementary abelian group F_2^k represented by commuting Hermitian Pauli generators;
/// R(bits) = prod_i G_i^{bit i} in increasing i.
class PauliGeneratedRep : public GroupRep {
   public:
    PauliGeneratedRep(std::string name, int n, std::vector<PauliOp> gens, std::vector<std::string> bit_names = {})
        : name_(std::move(name)), n_(n), gens_(std::move(gens)), bit_names_(std::move(bit_names)) {
        require(!gens_.empty() && gens_.size() <= 40, ErrorKind::TooLarge, "generator count out of range");
        for (size_t i = 0; i < gens_.size(); i++) {
            require(gens_[i].n_qubits() == n, ErrorKind::DimensionMismatch, "generator size mismatch");
            require(gens_[i].is_hermitian(), ErrorKind::InvalidArgument, "generators must be Hermitian");
            for (size_t j = 0; j < i; j++) {
                require(pauli_commutes(gens_[i], gens_[j]), ErrorKind::NotAbelian, "generators must commute");
            }
        }
    }
    std::string name() const override {
        return name_;
    }
    uint64_t order() const override {
        return uint64_t{1} << gens_.size();
    }
    int n_qubits() const override {
        return n_;
    }
    int num_bits() const {
        return static_cast<int>(gens_.size());
    }
    const PauliOp &generator(int i) const {
        return gens_.at(static_cast<size_t>(i));
    }
    PauliOp element(uint64_t g) const {
        check_element(g);
        PauliOp acc(n_);
        for (size_t i = 0; i < gens_.size(); i++) {
            if ((g >> i) & 1) {
                acc = acc * gens_[i];
            }
        }
        return acc;
    }
    CMatrix matrix(uint64_t g) const override {
        return element(g).to_matrix();
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        return element(g).apply(v);
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        return a ^ b;
    }
    uint64_t inverse(uint64_t a) const override {
        return a;
    }
    std::string label(uint64_t g) const override {
        if (g == 0) {
            return "identity";
        }
        if (bit_names_.size() != gens_.size()) {
            return "bits:" + std::to_string(g);
        }
        std::string s;
        for (size_t i = 0; i < gens_.size(); i++) {
            if ((g >> i) & 1) {
                s += (s.empty() ? "" : "+") + bit_names_[i];
            }
        }
        return s;
    }
    bool abelian_by_construction() const override {
        return true;
    }

   private:
    std::string name_;
    int n_;
    std::vector<PauliOp> gens_;
    std::vector<std::string> bit_names_;
};

/// Group given by an explicit list of unitaries closed under multiplication.
class ExplicitRep : public GroupRep {
   public:
    ExplicitRep(int n, std::vector<CMatrix> mats, std::string name = "explicit") : n_(n), name_(std::move(name)) {
        auto d = static_cast<Eigen::Index>(dim_of(n));
        require(!mats.empty(), ErrorKind::InvalidArgument, "explicit group needs at least one element");
        require(mats.size() <= 4096, ErrorKind::TooLarge, "explicit group larger than 4096 elements");
        CMatrix id = CMatrix::Identity(d, d);
        int id_at = -1;
        for (size_t i = 0; i < mats.size(); i++) {
            require(mats[i].rows() == d && mats[i].cols() == d, ErrorKind::DimensionMismatch,
                    "explicit group matrix has wrong shape");
            require(is_unitary(mats[i]), ErrorKind::NotUnitary, "explicit group matrix is not unitary");
            if (id_at < 0 && (mats[i] - id).norm() < 1e-8) {
                id_at = static_cast<int>(i);
            }
        }
        require(id_at >= 0, ErrorKind::InvalidArgument, "explicit group must contain the identity");
        std::swap(mats[0], mats[static_cast<size_t>(id_at)]);
        mats_ = std::move(mats);
        size_t G = mats_.size();
        for (size_t i = 0; i < G; i++) {
            for (size_t j = 0; j < i; j++) {
                require((mats_[i] - mats_[j]).norm() > 1e-8, ErrorKind::InvalidArgument,
                        "explicit group lists an element twice");
            }
        }
        table_.assign(G * G, 0);
        inv_.assign(G, 0);
        for (size_t a = 0; a < G; a++) {
            for (size_t b = 0; b < G; b++) {
                table_[a * G + b] = find(mats_[a] * mats_[b]);
            }
            inv_[a] = find(mats_[a].adjoint());
        }
    }

    /// Closure of the generators under multiplication, up to `cap` elements.
    static ExplicitRep from_generators(int n, const std::vector<CMatrix> &gens, size_t cap = 4096) {
        auto d = static_cast<Eigen::Index>(dim_of(n));
        std::vector<CMatrix> elems{CMatrix::Identity(d, d)};
        for (size_t k = 0; k < elems.size(); k++) {
            for (const CMatrix &g : gens) {
                CMatrix p = g * elems[k];
                bool seen = false;
                for (const CMatrix &e : elems) {
                    if ((e - p).norm() < 1e-8) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    require(elems.size() < cap, ErrorKind::TooLarge, "generator closure exceeds cap");
                    elems.push_back(p);
                }
            }
        }
        return ExplicitRep(n, std::move(elems));
    }

    std::string name() const override {
        return name_;
    }
    uint64_t order() const override {
        return mats_.size();
    }
    int n_qubits() const override {
        return n_;
    }
    CMatrix matrix(uint64_t g) const override {
        check_element(g);
        return mats_[g];
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        check_element(a);
        check_element(b);
        return table_[a * mats_.size() + b];
    }
    uint64_t inverse(uint64_t a) const override {
        check_element(a);
        return inv_[a];
    }

   private:
    uint64_t find(const CMatrix &m) const {
        for (size_t i = 0; i < mats_.size(); i++) {
            if ((mats_[i] - m).norm() < 1e-8) {
                return i;
            }
        }
        throw Error(ErrorKind::InvalidArgument, "explicit group is not closed under multiplication");
    }
    int n_;
    std::string name_;
    std::vector<CMatrix> mats_;
    std::vector<uint64_t> table_;
    std::vector<uint64_t> inv_;
};

/// Symmetric group S_n acting by qubit permutations; index is the lexicographic rank of perm.
class PermutationRep : public GroupRep {
   public:
    explicit PermutationRep(int n) : n_(n) {
        require(n >= 1 && n <= 10, ErrorKind::TooLarge, "permutation group needs 1 <= n <= 10");
        order_ = 1;
        for (int i = 2; i <= n; i++) {
            order_ *= static_cast<uint64_t>(i);
        }
    }
    std::string name() const override {
        return "permutation";
    }
    uint64_t order() const override {
        return order_;
    }
    int n_qubits() const override {
        return n_;
    }
    std::vector<int> perm(uint64_t g) const {
        check_element(g);
        std::vector<int> pool(static_cast<size_t>(n_));
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<int> out;
        uint64_t f = order_;
        for (int i = n_; i >= 1; i--) {
            f /= static_cast<uint64_t>(i);
            uint64_t k = g / f;
            g %= f;
            out.push_back(pool[k]);
            pool.erase(pool.begin() + static_cast<long>(k));
        }
        return out;
    }
    uint64_t index_of(const std::vector<int> &p) const {
        require(static_cast<int>(p.size()) == n_, ErrorKind::DimensionMismatch, "permutation size mismatch");
        std::vector<int> pool(static_cast<size_t>(n_));
        std::iota(pool.begin(), pool.end(), 0);
        uint64_t idx = 0, f = order_;
        for (int i = n_; i >= 1; i--) {
            f /= static_cast<uint64_t>(i);
            auto it = std::find(pool.begin(), pool.end(), p[static_cast<size_t>(n_ - i)]);
            require(it != pool.end(), ErrorKind::InvalidArgument, "not a permutation");
            idx += static_cast<uint64_t>(it - pool.begin()) * f;
            pool.erase(it);
        }
        return idx;
    }
    CMatrix matrix(uint64_t g) const override {
        return qubit_permutation_matrix(perm(g));
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        return permute_qubits(v, perm(g));
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        // (ab) applies b first: q -> b(q) -> a(b(q)).
        std::vector<int> pa = perm(a), pb = perm(b), out(static_cast<size_t>(n_));
        for (int q = 0; q < n_; q++) {
            out[static_cast<size_t>(q)] = pa[static_cast<size_t>(pb[static_cast<size_t>(q)])];
        }
        return index_of(out);
    }
    uint64_t inverse(uint64_t a) const override {
        std::vector<int> pa = perm(a), out(static_cast<size_t>(n_));
        for (int q = 0; q < n_; q++) {
            out[static_cast<size_t>(pa[static_cast<size_t>(q)])] = q;
        }
        return index_of(out);
    }
    std::string label(uint64_t g) const override {
        if (g == 0) {
            return "identity";
        }
        std::string s = "perm[";
        auto p = perm(g);
        for (size_t i = 0; i < p.size(); i++) {
            s += (i ? "," : "") + std::to_string(p[i]);
        }
        return s + "]";
    }

   private:
    int n_;
    uint64_t order_;
};

/// Two-copy Pauli group on 2n qubits. Label bits: 0 = i-phase bit k0, 1 = sign bit k1,
/// 2..2+n-1 = x, 2+n..2+2n-1 = z. Label (k0,k1,x,z) stands for P = i^{k0+2k1} X^x Z^z and acts as
/// P (x) P = (-1)^{k0} (X^x Z^z)^{(x)2}; the sign bit is in the kernel.
inline std::shared_ptr<PauliGeneratedRep> two_copy_pauli(int n) {
    require(n >= 1 && n <= 4, ErrorKind::TooLarge, "two_copy_pauli needs 1 <= n <= 4");
    int N = 2 * n;
    std::vector<PauliOp> gens;
    std::vector<std::string> names;
    gens.push_back(PauliOp(N).with_phase(2));
    names.push_back("k0");
    gens.push_back(PauliOp(N));
    names.push_back("k1");
    for (int q = 0; q < n; q++) {
        gens.push_back(PauliOp::single(N, q, 'X') * PauliOp::single(N, n + q, 'X'));
        names.push_back("x" + std::to_string(q));
    }
    for (int q = 0; q < n; q++) {
        gens.push_back(PauliOp::single(N, q, 'Z') * PauliOp::single(N, n + q, 'Z'));
        names.push_back("z" + std::to_string(q));
    }
    return std::make_shared<PauliGeneratedRep>("two_copy_pauli", N, gens, names);
}

/// Decodes a two-copy label (see two_copy_pauli) to its single-copy Pauli i^{k0+2k1} X^x Z^z.
inline PauliOp two_copy_label_to_pauli(int n, uint64_t label) {
    int k0 = static_cast<int>(label & 1), k1 = static_cast<int>((label >> 1) & 1);
    uint64_t x = (label >> 2) & ((uint64_t{1} << n) - 1);
    uint64_t z = (label >> (2 + n)) & ((uint64_t{1} << n) - 1);
    return PauliOp(n, k0 + 2 * k1, x, z);
}

inline uint64_t pauli_to_two_copy_label(const PauliOp &p) {
    int n = p.n_qubits();
    int k = p.phase_exponent();
    return static_cast<uint64_t>(k & 1) | (static_cast<uint64_t>((k >> 1) & 1) << 1) | (p.x_bits() << 2) |
           (p.z_bits() << (2 + n));
}

/// R(a)R(b) == R(ab) (up to phase for projective reps) on `samples` random pairs.
inline bool check_homomorphism(const GroupRep &rep, int samples, uint64_t seed, double tol = 1e-8) {
    Rng rng(seed);
    std::uniform_int_distribution<uint64_t> pick(0, rep.order() - 1);
    auto d = rep.dim();
    if ((rep.matrix(0) - CMatrix::Identity(d, d)).norm() > tol) {
        return false;
    }
    for (int t = 0; t < samples; t++) {
        uint64_t a = pick(rng), b = pick(rng);
        CMatrix lhs = rep.matrix(a) * rep.matrix(b);
        CMatrix rhs = rep.matrix(rep.multiply(a, b));
        if (rep.projective()) {
            Complex ov = (rhs.adjoint() * lhs).trace() / static_cast<double>(d);
            if (std::abs(std::abs(ov) - 1.0) > tol) {
                return false;
            }
            lhs /= ov / std::abs(ov);
        }
        if ((lhs - rhs).norm() > tol) {
            return false;
        }
        if ((rep.matrix(rep.inverse(a)) * rep.matrix(a) - CMatrix::Identity(d, d)).norm() > tol &&
            !rep.projective()) {
            return false;
        }
    }
    return true;
}

/// Matrices commute pairwise: every pair when |G| <= 512, else min(|G|^2, 1e4) sampled pairs.
inline bool is_abelian(const GroupRep &rep, uint64_t seed = 0) {
    if (rep.abelian_by_construction()) {
        return true;
    }
    uint64_t G = rep.order();
    auto commute = [&](uint64_t a, uint64_t b) {
        CMatrix A = rep.matrix(a), B = rep.matrix(b);
        return (A * B - B * A).norm() <= 1e-8;
    };
    if (G <= 512) {
        std::vector<CMatrix> m;
        for (uint64_t g = 0; g < G; g++) {
            m.push_back(rep.matrix(g));
        }
        for (uint64_t a = 0; a < G; a++) {
            for (uint64_t b = 0; b < a; b++) {
                if ((m[a] * m[b] - m[b] * m[a]).norm() > 1e-8) {
                    return false;
                }
            }
        }
        return true;
    }
    Rng rng(seed);
    std::uniform_int_distribution<uint64_t> pick(0, G - 1);
    uint64_t pairs = std::min<uint64_t>(G * G, 10000);
    for (uint64_t t = 0; t < pairs; t++) {
        if (!commute(pick(rng), pick(rng))) {
            return false;
        }
    }
    return true;
}

/// mu = max_{g != e} |Tr R(g)| / d.
inline double max_trace_ratio(const GroupRep &rep) {
    double mu = 0;
    auto d = static_cast<double>(rep.dim());
    for (uint64_t g = 1; g < rep.order(); g++) {
        mu = std::max(mu, std::abs(rep.matrix(g).trace()) / d);
    }
    return mu;
}

}  // namespace qiso

#endif
