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

#ifndef QISO_GROUPS_PADDED_HPP
#define QISO_GROUPS_PADDED_HPP

#include "qiso/groups/rep.hpp"

namespace qiso {

/// R'(g) = R(g) (x) I on `extra` additional qubits placed after the base qubits.
class PaddedRep : public GroupRep {
   public:
    PaddedRep(GroupRepPtr base, int extra) : base_(std::move(base)), extra_(extra) {
        require(base_ != nullptr, ErrorKind::InvalidArgument, "padded rep needs a base");
        require(extra >= 0 && base_->n_qubits() + extra <= kMaxQubits, ErrorKind::TooLarge,
                "padded rep qubit count out of range");
    }
    const GroupRep &base() const {
        return *base_;
    }
    int extra_qubits() const {
        return extra_;
    }
    std::string name() const override {
        return base_->name() + "(x)I" + std::to_string(extra_);
    }
    uint64_t order() const override {
        return base_->order();
    }
    int n_qubits() const override {
        return base_->n_qubits() + extra_;
    }
    CMatrix matrix(uint64_t g) const override {
        auto e = static_cast<Eigen::Index>(dim_of(extra_));
        return kron(base_->matrix(g), CMatrix::Identity(e, e));
    }
    CVector apply(uint64_t g, const CVector &v) const override {
        require(v.size() == dim(), ErrorKind::DimensionMismatch, "padded apply dimension mismatch");
        auto d = base_->dim();
        auto e = static_cast<Eigen::Index>(dim_of(extra_));
        using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const RowMat> in(v.data(), d, e);
        RowMat out = base_->matrix(g) * in;
        return Eigen::Map<const CVector>(out.data(), v.size());
    }
    uint64_t multiply(uint64_t a, uint64_t b) const override {
        return base_->multiply(a, b);
    }
    uint64_t inverse(uint64_t a) const override {
        return base_->inverse(a);
    }
    std::string label(uint64_t g) const override {
        return base_->label(g);
    }
    bool projective() const override {
        return base_->projective();
    }
    bool abelian_by_construction() const override {
        return base_->abelian_by_construction();
    }

   private:
    GroupRepPtr base_;
    int extra_;
};

}  // namespace qiso

#endif
