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

#ifndef QISO_PROTOCOLS_INTERACTIVE_HPP
#define QISO_PROTOCOLS_INTERACTIVE_HPP

#include <functional>
#include <ostream>

#include "qiso/groups/twirl.hpp"
#include "qiso/protocols/shadows.hpp"
#include "qiso/psgi/instance.hpp"
#include "qiso/reductions/lowrank_gi.hpp"
#include "qiso/reductions/mixed.hpp"
#include "qiso/util/parallel.hpp"

namespace qiso {

/// One round: the verifier picks j in {1, 2} and g in G, sends a message, the prover replies j'.
struct ProtocolTranscript {
    int j = 1;
    uint64_t g = 0;
    std::string g_label;
    nlohmann::json payload = nlohmann::json::object();
    int reply = 0;
    bool accept = false;
    nlohmann::json diagnostics = nlohmann::json::object();
};

inline nlohmann::json to_json(const ProtocolTranscript &t) {
    return {{"j", t.j},           {"g", t.g},           {"g_label", t.g_label}, {"payload", t.payload},
            {"reply", t.reply},   {"accept", t.accept}, {"diagnostics", t.diagnostics}};
}

namespace detail {

inline double log_sum_exp(const std::vector<double> &xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
        m = std::max(m, x);
    }
    if (!std::isfinite(m)) {
        return m;
    }
    double s = 0;
    for (double x : xs) {
        s += std::exp(x - m);
    }
    return m + std::log(s);
}

inline std::pair<int, uint64_t> verifier_choice(Rng &rng, uint64_t order) {
    int j = std::uniform_int_distribution<int>(1, 2)(rng);
    uint64_t g = std::uniform_int_distribution<uint64_t>(0, order - 1)(rng);
    return {j, g};
}

}  // namespace detail

/// Unbounded prover: exact maximum likelihood between the uniform mixtures over two enumerated
/// orbits, given shadow records. Ties are broken by a fair coin.
class OrbitMlProver {
   public:
    OrbitMlProver(std::vector<CVector> orbit1, std::vector<CVector> orbit2)
        : orbits_{std::move(orbit1), std::move(orbit2)} {
        require(!orbits_[0].empty() && !orbits_[1].empty(), ErrorKind::InvalidArgument, "orbits must be nonempty");
    }

    struct Decision {
        int reply = 1;
        double loglik1 = 0, loglik2 = 0;
        bool tie = false;
    };

    Decision decide(const std::vector<ShadowRecord> &shadows, Rng &coin) const {
        std::vector<CVector> rows;
        rows.reserve(shadows.size());
        for (const auto &s : shadows) {
            rows.push_back(s.clifford.to_matrix().row(static_cast<Eigen::Index>(s.bits)).transpose());
        }
        Decision d;
        d.loglik1 = loglik(0, rows);
        d.loglik2 = loglik(1, rows);
        bool both_dead = !std::isfinite(d.loglik1) && !std::isfinite(d.loglik2);
        double scale = std::max({1.0, std::abs(d.loglik1), std::abs(d.loglik2)});
        d.tie = both_dead || (std::isfinite(d.loglik1) && std::isfinite(d.loglik2) &&
                              std::abs(d.loglik1 - d.loglik2) <= 1e-9 * scale);
        if (d.tie) {
            d.reply = std::uniform_int_distribution<int>(1, 2)(coin);
        } else {
            d.reply = d.loglik1 > d.loglik2 ? 1 : 2;
        }
        return d;
    }

   private:
    double loglik(int h, const std::vector<CVector> &rows) const {
        const auto &orbit = orbits_[static_cast<size_t>(h)];
        std::vector<double> per(orbit.size());
        for (size_t e = 0; e < orbit.size(); e++) {
            double s = 0;
            for (const auto &r : rows) {
                double p = std::norm(r.dot(orbit[e].conjugate()));
                if (p <= 1e-300) {
                    s = -std::numeric_limits<double>::infinity();
                    break;
                }
                s += std::log(p);
            }
            per[e] = s;
        }
        return detail::log_sum_exp(per) - std::log(static_cast<double>(orbit.size()));
    }

    std::array<std::vector<CVector>, 2> orbits_;
};

inline constexpr uint64_t kMaxProtocolGroupOrder = uint64_t{1} << 16;

inline std::vector<CVector> group_orbit(const GroupRep &rep, const CVector &psi) {
    require(rep.order() <= kMaxProtocolGroupOrder, ErrorKind::TooLarge, "group too large to enumerate its orbit");
    std::vector<CVector> out;
    out.reserve(rep.order());
    for (uint64_t g = 0; g < rep.order(); g++) {
        out.push_back(rep.apply(g, psi));
    }
    return out;
}

/// Shadow count Theta(log |G|): ceil(4 (ln |G| + ln(2 / delta))) with delta = 0.05.
inline uint64_t qcszk_default_shadows(uint64_t order, double delta = 0.05) {
    double x = 4 * (std::log(static_cast<double>(std::max<uint64_t>(order, 1))) + std::log(2 / delta));
    return static_cast<uint64_t>(std::ceil(x));
}

/// The verifier's pre-measurement message for choice j restricted to `copies` copies of R(g)|psi_j>:
/// (1/|G|) sum_g (R(g)|psi_j><psi_j|R(g)^dag)^{(x) copies}. Shadows are measurements of this state.
inline CMatrix qcszk_message_state(const PsgiInstance &inst, int j, int copies = 1) {
    const StateVector &psi = j == 1 ? inst.psi1 : inst.psi2;
    return k_twirl(*inst.rep, DensityMatrix::pure(psi), copies).matrix();
}

/// Classical-shadow non-isomorphism protocol. The verifier sends N shadows of R(g)|psi_j>; the
/// prover answers by maximum likelihood over the two orbits.
class QcszkProtocol {
   public:
    QcszkProtocol(PsgiInstance inst, uint64_t shadows = 0)
        : inst_(std::move(inst)),
          shadows_(shadows ? shadows : qcszk_default_shadows(inst_.rep ? inst_.rep->order() : 1)),
          prover_(orbits()) {}

    uint64_t shadows() const {
        return shadows_;
    }
    bool keep_records = false;

    ProtocolTranscript round(uint64_t seed) const {
        Rng rng(derive_seed(seed, 0));
        auto [j, g] = detail::verifier_choice(rng, inst_.rep->order());
        const StateVector &psi = j == 1 ? inst_.psi1 : inst_.psi2;
        StateVector msg = StateVector::normalized(psi.n_qubits(), inst_.rep->apply(g, psi.amplitudes()));
        auto records = clifford_shadow(msg, shadows_, derive_seed(seed, 1));
        Rng coin(derive_seed(seed, 2));
        auto d = prover_.decide(records, coin);
        ProtocolTranscript t;
        t.j = j;
        t.g = g;
        t.g_label = inst_.rep->label(g);
        t.payload = {{"kind", "shadows"}, {"count", shadows_}};
        if (keep_records) {
            auto arr = nlohmann::json::array();
            for (const auto &r : records) {
                arr.push_back(to_json(r));
            }
            t.payload["records"] = arr;
        }
        t.reply = d.reply;
        t.accept = t.reply == t.j;
        t.diagnostics = {{"loglik1", finite_or_null(d.loglik1)}, {"loglik2", finite_or_null(d.loglik2)}, {"tie", d.tie}};
        return t;
    }

    static nlohmann::json finite_or_null(double x) {
        return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
    }

   private:
    OrbitMlProver orbits() const {
        inst_.validate();
        return {group_orbit(*inst_.rep, inst_.psi1.amplitudes()), group_orbit(*inst_.rep, inst_.psi2.amplitudes())};
    }

    PsgiInstance inst_;
    uint64_t shadows_;
    OrbitMlProver prover_;
};

inline ProtocolTranscript qcszk_round(const PsgiInstance &inst, uint64_t shadows, uint64_t seed) {
    return QcszkProtocol(inst, shadows).round(seed);
}

/// Twirl-and-distinguish protocol on k copies. The prover measures the Helstrom projector of the
/// exact k-twirled states.
class QszkMixedProtocol {
   public:
    QszkMixedProtocol(const MsgiInstance &inst, int k, uint64_t max_dim = 1024) : inst_(inst), k_(k) {
        require(inst.rep != nullptr, ErrorKind::InvalidArgument, "mixed instance has no group");
        require(inst.sigma0.dim() == inst.rep->dim() && inst.sigma1.dim() == inst.rep->dim(),
                ErrorKind::DimensionMismatch, "mixed instance states do not match the group dimension");
        rho_[0] = k_twirl(*inst.rep, inst.sigma0, k, max_dim).matrix();
        rho_[1] = k_twirl(*inst.rep, inst.sigma1, k, max_dim).matrix();
        CMatrix delta = rho_[0] - rho_[1];
        delta = 0.5 * (delta + delta.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
        projector_ = CMatrix::Zero(delta.rows(), delta.cols());
        double pos = 0;
        for (Eigen::Index i = 0; i < delta.rows(); i++) {
            double l = es.eigenvalues()(i);
            trace_distance_ += 0.5 * std::abs(l);
            if (l > 1e-12) {
                pos += l;
                projector_ += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            }
        }
        accept_probability_ = 0.5 + 0.5 * pos;
    }

    int k() const {
        return k_;
    }
    /// D = (1/2) || rho_1^(k) - rho_2^(k) ||_1 of the k-twirled states.
    double trace_distance() const {
        return trace_distance_;
    }
    /// Exact acceptance probability of the Helstrom prover, 1/2 + D/2.
    double accept_probability() const {
        return accept_probability_;
    }
    const CMatrix &twirled(int j) const {
        return rho_[static_cast<size_t>(j - 1)];
    }

    ProtocolTranscript round(uint64_t seed) const {
        Rng rng(derive_seed(seed, 0));
        auto [j, g] = detail::verifier_choice(rng, inst_.rep->order());
        const DensityMatrix &s = j == 1 ? inst_.sigma0 : inst_.sigma1;
        CMatrix u = inst_.rep->matrix(g);
        CMatrix one = u * s.matrix() * u.adjoint();
        CMatrix msg = one;
        for (int i = 1; i < k_; i++) {
            msg = kron(msg, one);
        }
        double p1 = std::clamp((projector_ * msg).trace().real(), 0.0, 1.0);
        Rng meas(derive_seed(seed, 1));
        bool plus = std::bernoulli_distribution(p1)(meas);
        ProtocolTranscript t;
        t.j = j;
        t.g = g;
        t.g_label = inst_.rep->label(g);
        t.payload = {{"kind", "copies"}, {"k", k_}, {"dimension", msg.rows()}};
        t.reply = plus ? 1 : 2;
        t.accept = t.reply == t.j;
        t.diagnostics = {{"p_reply_1", p1}};
        return t;
    }

   private:
    MsgiInstance inst_;
    int k_;
    std::array<CMatrix, 2> rho_;
    CMatrix projector_;
    double trace_distance_ = 0;
    double accept_probability_ = 0.5;
};

inline ProtocolTranscript qszk_mixed_round(const MsgiInstance &inst, int k, uint64_t seed) {
    return QszkMixedProtocol(inst, k).round(seed);
}

/// Low-rank state isomorphism over the Clifford group (beta = 1).
struct LowRankPsgi {
    LowRankState psi1, psi2;
    DecisionThresholds thresholds;
};

inline LowRankPsgi lowrank_psgi(const LowRankGiInstance &inst) {
    return {inst.psi1, inst.psi2, inst.thresholds};
}

inline constexpr double kLowRankShadowConstant = 3.0;

/// N = ceil(c ln(M / (gamma eps^2))) with M = 2|C_n| targets, eps = 1 - alpha and c = 3.
inline uint64_t szk_lowrank_default_shadows(uint64_t targets, double gamma, double eps,
                                            double c = kLowRankShadowConstant) {
    require(gamma > 0 && gamma < 1, ErrorKind::InvalidArgument, "gamma must lie in (0, 1)");
    eps = std::max(eps, 1e-300);
    double x = c * std::log(static_cast<double>(targets) / (gamma * eps * eps));
    return std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(x)));
}

/// SZK protocol for low-rank instances with n <= 2 qubits: shadows of C|psi_j> for a uniformly
/// random Clifford C; the prover decides by exact orbit likelihoods on the materialized states.
class SzkLowRankProtocol {
   public:
    SzkLowRankProtocol(const LowRankPsgi &inst, uint64_t shadows, double gamma)
        : rep_(make_rep(inst)), gamma_(gamma),
          prover_(group_orbit(*rep_, inst.psi1.materialize()), group_orbit(*rep_, inst.psi2.materialize())) {
        require(inst.thresholds.beta == 1.0, ErrorKind::InvalidArgument, "the low-rank protocol needs beta = 1");
        psi_[0] = inst.psi1.materialize();
        psi_[1] = inst.psi2.materialize();
        shadows_ = shadows ? shadows
                           : szk_lowrank_default_shadows(2 * rep_->order(), gamma, 1.0 - inst.thresholds.alpha);
    }

    uint64_t shadows() const {
        return shadows_;
    }
    double gamma() const {
        return gamma_;
    }

    ProtocolTranscript round(uint64_t seed) const {
        Rng rng(derive_seed(seed, 0));
        auto [j, g] = detail::verifier_choice(rng, rep_->order());
        const CVector &psi = psi_[static_cast<size_t>(j - 1)];
        int n = rep_->n_qubits();
        auto records = clifford_shadow(StateVector::normalized(n, rep_->apply(g, psi)), shadows_, derive_seed(seed, 1));
        Rng coin(derive_seed(seed, 2));
        auto d = prover_.decide(records, coin);
        ProtocolTranscript t;
        t.j = j;
        t.g = g;
        t.g_label = rep_->label(g);
        t.payload = {{"kind", "shadows"}, {"count", shadows_}, {"gamma", gamma_}};
        t.reply = d.reply;
        t.accept = t.reply == t.j;
        t.diagnostics = {{"loglik1", QcszkProtocol::finite_or_null(d.loglik1)},
                         {"loglik2", QcszkProtocol::finite_or_null(d.loglik2)},
                         {"tie", d.tie}};
        return t;
    }

   private:
    static GroupRepPtr make_rep(const LowRankPsgi &inst) {
        int n = inst.psi1.n_qubits();
        require(n == inst.psi2.n_qubits(), ErrorKind::DimensionMismatch, "low-rank states differ in qubit count");
        require(n <= 2, ErrorKind::TooLarge, "the low-rank protocol enumerates Cliffords only for n <= 2");
        return std::make_shared<CliffordGroupRep>(n);
    }

    GroupRepPtr rep_;
    double gamma_;
    uint64_t shadows_ = 0;
    std::array<CVector, 2> psi_;
    OrbitMlProver prover_;
};

inline ProtocolTranscript szk_lowrank_round(const LowRankPsgi &inst, uint64_t shadows, double gamma, uint64_t seed) {
    return SzkLowRankProtocol(inst, shadows, gamma).round(seed);
}

struct TrialStats {
    uint64_t trials = 0;
    uint64_t accepts = 0;
    double rate = 0;
    Interval ci;
    uint64_t seed = 0;
};

inline nlohmann::json to_json(const TrialStats &s) {
    return {{"trials", s.trials}, {"accepts", s.accepts}, {"rate", s.rate},
            {"ci_lo", s.ci.lo},   {"ci_hi", s.ci.hi},     {"seed", s.seed}};
}

/// Runs `round(derive_seed(seed, i))` for i < trials. Optional sink sees transcripts in order.
inline TrialStats run_trials(const std::function<ProtocolTranscript(uint64_t)> &round, uint64_t trials, uint64_t seed,
                             int threads = 1,
                             const std::function<void(uint64_t, const ProtocolTranscript &)> &sink = nullptr) {
    require(trials >= 1, ErrorKind::InvalidArgument, "run_trials needs at least one trial");
    std::vector<ProtocolTranscript> ts(sink ? trials : 0);
    std::vector<uint8_t> acc(trials);
    parallel_for(static_cast<size_t>(trials), threads, [&](size_t i) {
        ProtocolTranscript t = round(derive_seed(seed, i));
        acc[i] = t.accept ? 1 : 0;
        if (sink) {
            ts[i] = std::move(t);
        }
    });
    TrialStats s;
    s.trials = trials;
    s.seed = seed;
    for (uint64_t i = 0; i < trials; i++) {
        s.accepts += acc[i];
        if (sink) {
            sink(i, ts[i]);
        }
    }
    s.rate = static_cast<double>(s.accepts) / static_cast<double>(trials);
    s.ci = wilson_interval(s.accepts, trials);
    return s;
}

struct SummaryRow {
    std::string instance;
    TrialStats stats;
};

/// CSV with header "instance,trials,accept_rate,ci_lo,ci_hi".
inline void write_summary_csv(std::ostream &os, const std::vector<SummaryRow> &rows) {
    os << "instance,trials,accept_rate,ci_lo,ci_hi\n";
    os.precision(6);
    for (const auto &r : rows) {
        os << r.instance << ',' << r.stats.trials << ',' << r.stats.rate << ',' << r.stats.ci.lo << ','
           << r.stats.ci.hi << '\n';
    }
}

}  // namespace qiso

#endif
