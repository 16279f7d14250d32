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

#ifndef QISO_GROUPS_DIHEDRAL_HPP
#define QISO_GROUPS_DIHEDRAL_HPP

#include "qiso/groups/rep.hpp"

namespace qiso {

/// G x| Z_2 over an abelian base, on one extra (most significant) qubit. Element (g, a) has index
/// g + |G| a. R'(g,0) = |0><0| (x) R(g) + |1><1| (x) R(g^-1), R'(0,1) = X (x) I and
/// R'(g,a) = R'(g,0) R'(0,a).
class DihedralizedRep : public GroupRep {
   public:
    explicit DihedralizedRep(GroupRepPtr base, uint64_t seed = 0) : base_(std::move(base)) {
        require(base_ != nullptr, ErrorKind::InvalidArgument, "dihedralize needs a base rep");
        require(!base_->projective(), ErrorKind::InvalidArgument, "dihedralize needs a linear (not projective) rep");
        require(base_->order() <= (uint64_t{1} << 40), ErrorKind::TooLarge, "base group too large");
        require(is_abelian(*base_, seed), ErrorKind::NotAbelian, "dihedralize needs an abelian base group");
    }

    const GroupRep &base() const {
        return *base_;
    }
    std::string name() const override {
        return "dihedral(" + base_->name() + ")";
    }
    uint64_t order() const override {
        return 2 * base_->order();
    }
    int n_qubits() const override {
        return base_->n_qubits() + 1;
    }
    uint64_t index(uint64_t g, int a) const {
        base_->check_element(g);
        return g + base_->order() * static_cast<uint64_t>(a & 1);
    }
    std::pair<uint64_t, int> split(uint64_t e) const {
        check_element(e);
        return {e % base_->order(), static_cast<int>(e / base_->order())};
    }

    CMatrix matrix(uint64_t e) const override {
        auto [g, a] = split(e);
        auto d = base_->dim();
        CMatrix blk = CMatrix::Zero(2 * d, 2 * d);
        blk.topLeftCorner(d, d) = base_->matrix(g);
        blk.bottomRightCorner(d, d) = base_->matrix(base_->inverse(g));
        if (a == 0) {
            return blk;
        }
        CMatrix x = CMatrix::Zero(2 * d, 2 * d);
        x.topRightCorner(d, d) = CMatrix::Identity(d, d);
        x.bottomLeftCorner(d, d) = CMatrix::Identity(d, d);
        return blk * x;
    }

    CVector apply(uint64_t e, const CVector &v) const override {
        auto [g, a] = split(e);
        auto d = base_->dim();
        require(v.size() == 2 * d, ErrorKind::DimensionMismatch, "dihedral apply dimension mismatch");
        CVector top = a ? v.tail(d) : v.head(d);
        CVector bot = a ? v.head(d) : v.tail(d);
        CVector out(2 * d);
        out.head(d) = base_->apply(g, top);
        out.tail(d) = base_->apply(base_->inverse(g), bot);
        return out;
    }

    uint64_t multiply(uint64_t e1, uint64_t e2) const override {
        auto [g, a] = split(e1);
        auto [h, b] = split(e2);
        uint64_t hh = a ? base_->inverse(h) : h;
        return index(base_->multiply(g, hh), a ^ b);
    }

    uint64_t inverse(uint64_t e) const override {
        auto [g, a] = split(e);
        return a ? e : index(base_->inverse(g), 0);
    }

    std::string label(uint64_t e) const override {
        auto [g, a] = split(e);
        if (e == 0) {
            return "identity";
        }
        return "(" + base_->label(g) + "," + std::to_string(a) + ")";
    }

   private:
    GroupRepPtr base_;
};

inline std::shared_ptr<DihedralizedRep> dihedralize(GroupRepPtr base, uint64_t seed = 0) {
    return std::make_shared<DihedralizedRep>(std::move(base), seed);
}

/// (|0>|psi1> + |1>|psi2>)/sqrt2.
inline StateVector controlled_superposition(const StateVector &psi1, const StateVector &psi2) {
    require(psi1.dim() == psi2.dim(), ErrorKind::DimensionMismatch, "state dimension mismatch");
    CVector v(2 * psi1.dim());
    v.head(psi1.dim()) = psi1.amplitudes();
    v.tail(psi2.dim()) = psi2.amplitudes();
    return StateVector::normalized(psi1.n_qubits() + 1, v / std::sqrt(2.0));
}

}  // namespace qiso

#endif
