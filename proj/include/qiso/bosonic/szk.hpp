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

#ifndef QISO_BOSONIC_SZK_HPP
#define QISO_BOSONIC_SZK_HPP

#include "qiso/bosonic/optimize.hpp"
#include "qiso/util/stats.hpp"

namespace qiso {

/// Ascending union of the photon sectors of two core states.
inline std::vector<int> joint_sectors(const CoreState &a, const CoreState &b) {
    auto s = a.sectors();
    for (int r : b.sectors()) {
        s.push_back(r);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline uint64_t sectors_dimension(int n, const std::vector<int> &sectors) {
    uint64_t d = 0;
    for (int r : sectors) {
        d += sector_dimension(n, r);
    }
    return d;
}

/// sigma = b / n^{r/2}.
inline double szk_default_sigma(double b, int n, int r) {
    return b / std::pow(static_cast<double>(n), 0.5 * r);
}

/// R(U)|c> + eta for Haar U and eta ~ N_C(0, sigma^2 I), as a vector over `sectors`
/// (the sectors of c when empty).
inline CVector szk_sampler(const CoreState &c, double sigma, uint64_t seed, std::vector<int> sectors = {}) {
    require(sigma >= 0, ErrorKind::InvalidArgument, "sigma must be nonnegative");
    if (sectors.empty()) {
        sectors = c.sectors();
    }
    ModeUnitary u = haar_mode_unitary(c.n_modes(), derive_seed(seed, 0));
    CVector x = core_to_vector(apply_linear_optical(u, c), sectors);
    Rng rng(derive_seed(seed, 1));
    for (Eigen::Index i = 0; i < x.size(); i++) {
        x(i) += complex_normal(rng, sigma);
    }
    return x;
}

/// Closed-form total variation distance between N(u, sigma^2) and N(v, sigma^2).
inline double gaussian_tv_1d(double u, double v, double sigma) {
    return std::erf(std::abs(u - v) / (2 * std::sqrt(2.0) * sigma));
}

struct TvEstimate {
    double advantage = 0;  // 2 acc - 1
    double ci_lo = 0;
    double ci_hi = 0;
    uint64_t samples_per_side = 0;
    /// Lower bound on the total variation distance at the interval's confidence.
    double tv_lower_bound() const {
        return std::max(0.0, ci_lo);
    }
};

inline TvEstimate advantage_from_counts(uint64_t correct, uint64_t n_per_side, double z = 1.96) {
    uint64_t total = 2 * n_per_side;
    auto ci = wilson_interval(correct, total, z);
    TvEstimate e;
    e.advantage = 2.0 * static_cast<double>(correct) / static_cast<double>(total) - 1;
    e.ci_lo = 2 * ci.lo - 1;
    e.ci_hi = 2 * ci.hi - 1;
    e.samples_per_side = n_per_side;
    return e;
}

/// Monte Carlo TV lower bound for two 1-D Gaussians using the midpoint discriminator.
inline TvEstimate empirical_tv_1d(double u, double v, double sigma, uint64_t n, uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> a(u, sigma), b(v, sigma);
    double mid = 0.5 * (u + v);
    bool u_low = u <= v;
    uint64_t correct = 0;
    for (uint64_t i = 0; i < n; i++) {
        correct += (a(rng) <= mid) == u_low ? 1 : 0;
        correct += (b(rng) <= mid) != u_low ? 1 : 0;
    }
    return advantage_from_counts(correct, n);
}

struct TvGapOptions {
    int orbit_points = 2000;
    /// Local ascent steps refining the nearest sampled orbit point; 0 keeps the raw sampled distance.
    int refine_iters = 40;
    /// Orbit separation; measured with the optimizer when negative.
    double b = -1;
    int b_restarts = 10;
    int threads = 1;
    double z = 1.96;
};

struct TvGapResult {
    TvEstimate estimate;
    double b = 0;
    double threshold = 0;  // b / 2
    double sigma = 0;
    uint64_t dimension = 0;
    uint64_t in_region_1 = 0;  // side-1 samples within b/2 of the orbit of c1
    uint64_t in_region_2 = 0;  // side-2 samples within b/2 of the orbit of c1
};

/// min_V ||R(V)c1 - c2|| = sqrt(2 - 2 max Re <c2|R(V)|c1>), with the max taken by the optimizer
/// (seeded from derive_seed(seed, 2)); an upper estimate of the orbit distance.
inline double orbit_distance_estimate(const CoreState &c1, const CoreState &c2, uint64_t seed, int restarts = 10,
                                      int threads = 1) {
    OverlapOptions oo;
    oo.restarts = restarts;
    oo.seed = derive_seed(seed, 2);
    oo.objective = OverlapObjective::Real;
    oo.threads = threads;
    double re = optimize_overlap(c1, c2, oo).re_overlap;
    return std::sqrt(std::max(0.0, 2 - 2 * re));
}

/// Region statistic: a sample is attributed to c1 iff its distance to the (sampled, locally
/// refined) orbit of c1 is at most b/2.
inline TvGapResult estimate_tv_gap(const CoreState &c1, const CoreState &c2, double sigma, uint64_t n_per_side,
                                   uint64_t seed, const TvGapOptions &opt = {}) {
    require(c1.n_modes() == c2.n_modes() && c1.cap() == c2.cap(), ErrorKind::DimensionMismatch,
            "core states differ in modes or cap");
    require(n_per_side >= 1 && opt.orbit_points >= 1, ErrorKind::InvalidArgument, "need samples and orbit points");
    int n = c1.n_modes();
    auto sectors = joint_sectors(c1, c2);
    TvGapResult res;
    res.sigma = sigma;
    res.dimension = sectors_dimension(n, sectors);
    res.b = opt.b;
    if (res.b < 0) {
        res.b = orbit_distance_estimate(c1, c2, seed, opt.b_restarts, opt.threads);
    }
    res.threshold = res.b / 2;

    std::vector<CMatrix> orbit_u(static_cast<size_t>(opt.orbit_points));
    std::vector<CVector> orbit_x(orbit_u.size());
    for (size_t j = 0; j < orbit_u.size(); j++) {
        ModeUnitary u = haar_mode_unitary(n, derive_seed(derive_seed(seed, 3), j));
        orbit_u[j] = u.matrix();
        orbit_x[j] = core_to_vector(apply_linear_optical(u, c1), sectors);
    }
    Poly source = c1.to_poly();
    auto basis = [&] {
        std::vector<MultiIndex> b;
        for (int r : sectors) {
            for (auto &k : sector_basis(n, r)) {
                b.push_back(k);
            }
        }
        return b;
    }();

    auto distance_to_orbit = [&](const CVector &zv) {
        size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < orbit_x.size(); j++) {
            double d = (orbit_x[j] - zv).norm();
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        if (opt.refine_iters <= 0) {
            return bd;
        }
        Poly target;
        for (size_t i = 0; i < basis.size(); i++) {
            if (zv(static_cast<Eigen::Index>(i)) != Complex(0)) {
                target[basis[i]] = zv(static_cast<Eigen::Index>(i)) / std::sqrt(multi_factorial(basis[i]));
            }
        }
        detail::OverlapFunction f(source, target, n);
        OverlapOptions lo;
        lo.iters = opt.refine_iters;
        lo.objective = OverlapObjective::Real;
        auto out = detail::ascend(f, orbit_u[best], lo);
        double d2 = 1 + zv.squaredNorm() - 2 * out.value;
        return std::min(bd, std::sqrt(std::max(0.0, d2)));
    };

    std::vector<uint8_t> in1(n_per_side), in2(n_per_side);
    parallel_for(static_cast<size_t>(2 * n_per_side), opt.threads, [&](size_t idx) {
        bool first = idx < n_per_side;
        size_t i = first ? idx : idx - n_per_side;
        const CoreState &c = first ? c1 : c2;
        CVector zv = szk_sampler(c, sigma, derive_seed(derive_seed(seed, first ? 0 : 1), i), sectors);
        (first ? in1 : in2)[i] = distance_to_orbit(zv) <= res.threshold ? 1 : 0;
    });
    for (size_t i = 0; i < n_per_side; i++) {
        res.in_region_1 += in1[i];
        res.in_region_2 += in2[i];
    }
    uint64_t correct = res.in_region_1 + (n_per_side - res.in_region_2);
    res.estimate = advantage_from_counts(correct, n_per_side, opt.z);
    return res;
}

}  // namespace qiso

#endif
