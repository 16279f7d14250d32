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

#ifndef QISO_PSGI_F2_HPP
#define QISO_PSGI_F2_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "qiso/error.hpp"

namespace qiso {

inline int f2_dot(uint64_t a, uint64_t b) {
    return std::popcount(a & b) & 1;
}

/// Row-reduces `rows` over F_2 (bit i = coordinate i). Returns the reduced nonzero rows and writes
/// each row's pivot column.
inline std::vector<uint64_t> f2_row_reduce(std::vector<uint64_t> rows, int nbits, std::vector<int> *pivots) {
    std::vector<uint64_t> out;
    std::vector<int> piv;
    for (int col = 0; col < nbits; col++) {
        uint64_t bit = uint64_t{1} << col;
        size_t found = rows.size();
        for (size_t i = 0; i < rows.size(); i++) {
            if (rows[i] & bit) {
                found = i;
                break;
            }
        }
        if (found == rows.size()) {
            continue;
        }
        uint64_t p = rows[found];
        rows.erase(rows.begin() + static_cast<long>(found));
        for (auto &x : rows) {
            if (x & bit) {
                x ^= p;
            }
        }
        for (auto &x : out) {
            if (x & bit) {
                x ^= p;
            }
        }
        out.push_back(p);
        piv.push_back(col);
    }
    if (pivots) {
        *pivots = piv;
    }
    return out;
}

inline int f2_rank(const std::vector<uint64_t> &rows, int nbits) {
    return static_cast<int>(f2_row_reduce(rows, nbits, nullptr).size());
}

/// Basis of L = {x in F_2^nbits : chi . x = 0 for every row chi}.
inline std::vector<uint64_t> f2_solve(const std::vector<uint64_t> &rows, int nbits) {
    require(nbits >= 1 && nbits <= 63, ErrorKind::OutOfRange, "f2_solve needs 1 <= nbits <= 63");
    uint64_t mask = (uint64_t{1} << nbits) - 1;
    for (uint64_t r : rows) {
        require((r & ~mask) == 0, ErrorKind::DimensionMismatch, "row has bits beyond nbits");
    }
    std::vector<int> piv;
    auto red = f2_row_reduce(rows, nbits, &piv);
    std::vector<bool> is_pivot(static_cast<size_t>(nbits), false);
    for (int p : piv) {
        is_pivot[static_cast<size_t>(p)] = true;
    }
    std::vector<uint64_t> basis;
    for (int free = 0; free < nbits; free++) {
        if (is_pivot[static_cast<size_t>(free)]) {
            continue;
        }
        uint64_t v = uint64_t{1} << free;
        // Reduced rows have a single pivot each; set pivot bits so every row dots to 0.
        for (size_t i = 0; i < red.size(); i++) {
            if ((red[i] >> free) & 1) {
                v |= uint64_t{1} << piv[i];
            }
        }
        basis.push_back(v);
    }
    for (uint64_t b : basis) {
        for (uint64_t r : rows) {
            require(f2_dot(b, r) == 0, ErrorKind::InvalidArgument, "f2_solve internal check failed");
        }
    }
    return basis;
}

/// All elements of the span of `basis` (2^k of them, k <= 24).
inline std::vector<uint64_t> f2_span(const std::vector<uint64_t> &basis) {
    require(basis.size() <= 24, ErrorKind::TooLarge, "span too large to enumerate");
    std::vector<uint64_t> out{0};
    for (uint64_t b : basis) {
        size_t s = out.size();
        for (size_t i = 0; i < s; i++) {
            out.push_back(out[i] ^ b);
        }
    }
    return out;
}

}  // namespace qiso

#endif
