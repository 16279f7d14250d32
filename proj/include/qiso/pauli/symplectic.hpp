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

#ifndef QISO_PAULI_SYMPLECTIC_HPP
#define QISO_PAULI_SYMPLECTIC_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "qiso/error.hpp"

namespace qiso {

// Symplectic vectors over F2 with interleaved layout: bit 2i is x_i, bit 2i+1 is z_i.
namespace symp {

constexpr uint64_t kEven = 0x5555555555555555ULL;

inline int inner(uint64_t v, uint64_t w) {
    uint64_t vx = v & kEven, vz = (v >> 1) & kEven;
    uint64_t wx = w & kEven, wz = (w >> 1) & kEven;
    return std::popcount((vx & wz) ^ (wx & vz)) & 1;
}

inline uint64_t transvection(uint64_t k, uint64_t v) {
    return inner(k, v) ? (v ^ k) : v;
}

/// Returns (h1, h2) with y = Z_h1 Z_h2 x, where Z_h is the transvection by h.
inline std::pair<uint64_t, uint64_t> find_transvection(uint64_t x, uint64_t y, int n) {
    if (x == y) {
        return {0, 0};
    }
    if (inner(x, y)) {
        return {x ^ y, 0};
    }
    auto pair_bits = [](uint64_t v, int i) { return (v >> (2 * i)) & 3; };
    uint64_t z = 0;
    for (int i = 0; i < n; i++) {
        uint64_t xi = pair_bits(x, i), yi = pair_bits(y, i);
        if (xi != 0 && yi != 0) {
            uint64_t zi = xi ^ yi;
            if (zi == 0) {
                // x and y agree here; pick zi with odd form against both.
                zi = 2;
                if ((xi & 1) != ((xi >> 1) & 1)) {
                    zi |= 1;
                }
            }
            z |= zi << (2 * i);
            return {x ^ z, y ^ z};
        }
    }
    for (int i = 0; i < n; i++) {
        uint64_t xi = pair_bits(x, i), yi = pair_bits(y, i);
        if (xi != 0 && yi == 0) {
            uint64_t x0 = xi & 1, x1 = (xi >> 1) & 1;
            uint64_t zi = (x0 == x1) ? 2 : ((x0 << 1) | x1);
            z |= zi << (2 * i);
            break;
        }
    }
    for (int i = 0; i < n; i++) {
        uint64_t xi = pair_bits(x, i), yi = pair_bits(y, i);
        if (xi == 0 && yi != 0) {
            uint64_t y0 = yi & 1, y1 = (yi >> 1) & 1;
            uint64_t zi = (y0 == y1) ? 2 : ((y0 << 1) | y1);
            z |= zi << (2 * i);
            break;
        }
    }
    return {x ^ z, y ^ z};
}

/// Number of cosets at level j: 2^{2j-1}(2^{2j}-1).
inline uint64_t cosets_at_level(int j) {
    return (uint64_t{1} << (2 * j - 1)) * ((uint64_t{1} << (2 * j)) - 1);
}

/// |Sp(2n, F2)|, only while it fits in 64 bits (n <= 5).
inline uint64_t group_order(int n) {
    require(n >= 0 && n <= 5, ErrorKind::TooLarge, "symplectic group order does not fit in 64 bits for n > 5");
    uint64_t x = 1;
    for (int j = 1; j <= n; j++) {
        x *= cosets_at_level(j);
    }
    return x;
}

/// Builds the symplectic matrix from per-level digits. `digit(level_n, k_range, b_range)` returns
/// (k, b) with k in [0, 2^{2n}-1) and b in [0, 2^{2n-1}). Rows: row 2i is the image of x_i, row
/// 2i+1 the image of z_i.
inline std::vector<uint64_t> from_digits(int n, const std::function<std::pair<uint64_t, uint64_t>(int)> &digit) {
    require(n >= 1 && n <= 31, ErrorKind::TooLarge, "symplectic size out of range");
    int nn = 2 * n;
    auto [kk, bits] = digit(n);
    uint64_t k = kk + 1;
    uint64_t f1 = k;
    uint64_t e1 = 1;
    auto [t0, t1] = find_transvection(e1, f1, n);
    uint64_t eprime = e1;
    for (int j = 2; j < nn; j++) {
        if ((bits >> (j - 1)) & 1) {
            eprime |= uint64_t{1} << j;
        }
    }
    uint64_t h0 = transvection(t0, eprime);
    h0 = transvection(t1, h0);
    if (bits & 1) {
        f1 = 0;
    }
    std::vector<uint64_t> g(static_cast<size_t>(nn));
    g[0] = 1;
    g[1] = 2;
    if (n > 1) {
        std::vector<uint64_t> sub = from_digits(n - 1, digit);
        for (int j = 0; j < nn - 2; j++) {
            g[static_cast<size_t>(j + 2)] = sub[static_cast<size_t>(j)] << 2;
        }
    }
    for (auto &row : g) {
        row = transvection(t0, row);
        row = transvection(t1, row);
        row = transvection(h0, row);
        row = transvection(f1, row);
    }
    return g;
}

/// The index-th element of Sp(2n) in the canonical enumeration, index < group_order(n).
inline std::vector<uint64_t> from_index(int n, uint64_t index) {
    require(index < group_order(n), ErrorKind::OutOfRange, "symplectic index out of range");
    uint64_t rest = index;
    return from_digits(n, [&](int level) {
        uint64_t s = (uint64_t{1} << (2 * level)) - 1;
        uint64_t k = rest % s;
        rest /= s;
        uint64_t b = rest % (uint64_t{1} << (2 * level - 1));
        rest >>= (2 * level - 1);
        return std::make_pair(k, b);
    });
}

/// Uniformly random element of Sp(2n); `draw(bound)` must return a uniform integer in [0, bound).
inline std::vector<uint64_t> random(int n, const std::function<uint64_t(uint64_t)> &draw) {
    return from_digits(n, [&](int level) {
        uint64_t s = (uint64_t{1} << (2 * level)) - 1;
        uint64_t k = draw(s);
        uint64_t b = draw(uint64_t{1} << (2 * level - 1));
        return std::make_pair(k, b);
    });
}

inline bool is_symplectic(const std::vector<uint64_t> &rows, int n) {
    if (static_cast<int>(rows.size()) != 2 * n) {
        return false;
    }
    for (int a = 0; a < 2 * n; a++) {
        for (int b = 0; b < 2 * n; b++) {
            int want = (a / 2 == b / 2 && a != b) ? 1 : 0;
            if (inner(rows[static_cast<size_t>(a)], rows[static_cast<size_t>(b)]) != want) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace symp
}  // namespace qiso

#endif
