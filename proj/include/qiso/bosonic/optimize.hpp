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

#ifndef QISO_BOSONIC_OPTIMIZE_HPP
#define QISO_BOSONIC_OPTIMIZE_HPP

#include <optional>
#include <ostream>

#include "qiso/bosonic/action.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

/// What the ascent maximizes: |<c2|R(V)|c1>| or Re <c2|R(V)|c1>.
enum class OverlapObjective { Abs, Real };

struct OverlapOptions {
    int restarts = 10;
    int iters = 300;
    uint64_t seed = 1;
    int threads = 1;
    OverlapObjective objective = OverlapObjective::Abs;
    double grad_tol = 1e-12;
    /// Start of restart 0; identity when absent. Other restarts start from Haar unitaries.
    std::optional<CMatrix> initial;
};

struct OverlapResult {
    ModeUnitary v;
    double abs_overlap = 0;
    double re_overlap = 0;
    int best_restart = 0;
    int converged_restarts = 0;
    /// Best objective value so far over the concatenated restarts; non-decreasing.
    std::vector<double> trace;
};

namespace detail {

inline CMatrix cayley(const CMatrix &x) {
    auto n = x.rows();
    CMatrix id = CMatrix::Identity(n, n);
    return (id - 0.5 * x).partialPivLu().solve(id + 0.5 * x);
}

inline CMatrix polar_unitary(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

/// Overlap <target|P(Vz)> and its gradient d/dV_il = <d_l target | (d_i P)(Vz)>.
struct OverlapFunction {
    Poly source;
    Poly target;
    std::vector<Poly> d_source;
    std::vector<Poly> d_target;
    int n = 0;

    OverlapFunction(Poly src, Poly tgt, int n_modes) : source(std::move(src)), target(std::move(tgt)), n(n_modes) {
        for (int i = 0; i < n; i++) {
            d_source.push_back(poly_derivative(source, i));
            d_target.push_back(poly_derivative(target, i));
        }
    }
    Complex value(const CMatrix &v) const {
        return poly_inner(target, poly_substitute(source, v));
    }
    CMatrix gradient(const CMatrix &v) const {
        CMatrix g(n, n);
        for (int i = 0; i < n; i++) {
            Poly s = poly_substitute(d_source[static_cast<size_t>(i)], v);
            for (int l = 0; l < n; l++) {
                g(i, l) = poly_inner(d_target[static_cast<size_t>(l)], s);
            }
        }
        return g;
    }
};

inline double objective_value(Complex g, OverlapObjective obj) {
    return obj == OverlapObjective::Abs ? std::abs(g) : g.real();
}

struct RestartOutcome {
    CMatrix v;
    double value = 0;
    bool converged = false;
    std::vector<double> trace;
};

inline RestartOutcome ascend(const OverlapFunction &f, CMatrix v, const OverlapOptions &opt) {
    RestartOutcome out;
    Complex g = f.value(v);
    double val = objective_value(g, opt.objective);
    double t = 1.0;
    bool need_grad = true;
    CMatrix omega;
    for (int it = 0; it < opt.iters; it++) {
        if (need_grad) {
            CMatrix grad = f.gradient(v);
            // df = Re tr(A Omega) along V -> V exp(Omega); the steepest skew-Hermitian Omega is the
            // anti-Hermitian part of A^dag.
            CMatrix a = grad.transpose() * v;
            if (opt.objective == OverlapObjective::Abs) {
                a *= std::conj(g);
            }
            omega = 0.5 * (a.adjoint() - a);
            need_grad = false;
            if (omega.norm() < opt.grad_tol) {
                out.converged = true;
            }
        }
        if (!out.converged) {
            CMatrix cand = v * cayley(t * omega);
            Complex gc = f.value(cand);
            double vc = objective_value(gc, opt.objective);
            if (vc > val) {
                v = cand;
                g = gc;
                val = vc;
                t = std::min(t * 2.0, 1e3);
                need_grad = true;
            } else {
                t *= 0.5;
                if (t < 1e-14) {
                    out.converged = true;
                }
            }
        }
        out.trace.push_back(val);
    }
    out.v = polar_unitary(v);
    out.value = objective_value(f.value(out.v), opt.objective);
    return out;
}

}  // namespace detail

/// Random-restart Riemannian ascent over U(n) with a Cayley retraction, maximizing the overlap
/// <c2|R(V)|c1> in the substitution convention. Non-convergence is reported, never raised.
inline OverlapResult optimize_overlap(const CoreState &c1, const CoreState &c2, const OverlapOptions &opt = {}) {
    require(c1.n_modes() == c2.n_modes(), ErrorKind::DimensionMismatch, "core states differ in mode count");
    require(c1.cap() == c2.cap(), ErrorKind::InvalidArgument, "core states differ in photon cap");
    require(opt.restarts >= 1 && opt.iters >= 0, ErrorKind::InvalidArgument, "optimizer needs restarts >= 1");
    int n = c1.n_modes();
    detail::OverlapFunction f(c1.to_poly(), c2.to_poly(), n);
    std::vector<detail::RestartOutcome> outs(static_cast<size_t>(opt.restarts));
    parallel_for(static_cast<size_t>(opt.restarts), opt.threads, [&](size_t r) {
        CMatrix v0;
        if (r == 0) {
            v0 = opt.initial ? ModeUnitary(*opt.initial).matrix() : CMatrix::Identity(n, n);
        } else {
            v0 = haar_mode_unitary(n, derive_seed(opt.seed, r)).matrix();
        }
        outs[r] = detail::ascend(f, v0, opt);
    });
    OverlapResult res;
    double best = -std::numeric_limits<double>::infinity();
    double running = -std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < outs.size(); r++) {
        res.converged_restarts += outs[r].converged ? 1 : 0;
        for (double x : outs[r].trace) {
            running = std::max(running, x);
            res.trace.push_back(running);
        }
        if (outs[r].value > best) {
            best = outs[r].value;
            res.best_restart = static_cast<int>(r);
        }
    }
    const CMatrix &v = outs[static_cast<size_t>(res.best_restart)].v;
    res.v = ModeUnitary(v);
    Complex g = f.value(v);
    res.abs_overlap = std::abs(g);
    res.re_overlap = g.real();
    return res;
}

/// CSV with header "iteration,best_value".
inline void write_trace_csv(std::ostream &os, const std::vector<double> &trace) {
    os << "iteration,best_value\n";
    os.precision(17);
    for (size_t i = 0; i < trace.size(); i++) {
        os << i << ',' << trace[i] << '\n';
    }
}

}  // namespace qiso

#endif
