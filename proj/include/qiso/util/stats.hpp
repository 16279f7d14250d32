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

#ifndef QISO_UTIL_STATS_HPP
#define QISO_UTIL_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qiso/error.hpp"

namespace qiso {

struct Interval {
    double lo = 0, hi = 0;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
inline Interval wilson_interval(uint64_t k, uint64_t n, double z = 1.96) {
    require(n > 0 && k <= n, ErrorKind::InvalidArgument, "wilson_interval needs 0 <= k <= n, n > 0");
    double p = static_cast<double>(k) / static_cast<double>(n);
    double nn = static_cast<double>(n);
    double den = 1 + z * z / nn;
    double centre = (p + z * z / (2 * nn)) / den;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / den;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Median of the means of `groups` contiguous blocks.
inline double median_of_means(const std::vector<double> &xs, int groups) {
    require(!xs.empty() && groups >= 1, ErrorKind::InvalidArgument, "median_of_means needs data and groups >= 1");
    size_t k = std::min<size_t>(static_cast<size_t>(groups), xs.size());
    size_t per = xs.size() / k;
    std::vector<double> means;
    for (size_t g = 0; g < k; g++) {
        size_t end = g + 1 == k ? xs.size() : (g + 1) * per;
        double s = 0;
        for (size_t i = g * per; i < end; i++) {
            s += xs[i];
        }
        means.push_back(s / static_cast<double>(end - g * per));
    }
    std::sort(means.begin(), means.end());
    size_t m = means.size();
    return m % 2 ? means[m / 2] : 0.5 * (means[m / 2 - 1] + means[m / 2]);
}

}  // namespace qiso

#endif
