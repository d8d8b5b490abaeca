#include "irsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "irsim/phase.hpp"

namespace irsim {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::irs_noma: return "irs_noma";
        case Scheme::irs_oma: return "irs_oma";
        case Scheme::relay: return "relay";
    }
    return "?";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::coherent: return "coherent";
        case Strategy::random: return "random";
        case Strategy::select_q: return "select_q";
    }
    return "?";
}

std::string to_string(User u) {
    return u == User::u1 ? "u1" : "u2";
}

std::optional<Scheme> parse_scheme(const std::string& s) {
    if (s == "irs_noma") return Scheme::irs_noma;
    if (s == "irs_oma") return Scheme::irs_oma;
    if (s == "relay") return Scheme::relay;
    return std::nullopt;
}

std::optional<Strategy> parse_strategy(const std::string& s) {
    if (s == "coherent") return Strategy::coherent;
    if (s == "random") return Strategy::random;
    if (s == "select_q") return Strategy::select_q;
    return std::nullopt;
}

std::optional<User> parse_user(const std::string& s) {
    if (s == "u1") return User::u1;
    if (s == "u2") return User::u2;
    return std::nullopt;
}

void SchemeSpec::validate() const {
    if (scheme == Scheme::relay) {
        if (strategy.has_value())
            throw std::invalid_argument(
                "SchemeSpec.strategy: the relay scheme carries no phase "
                "strategy");
        return;
    }
    if (!strategy.has_value())
        throw std::invalid_argument(
            "SchemeSpec.strategy: IRS schemes require a phase strategy");
    if (scheme == Scheme::irs_oma && user == User::u2)
        throw std::invalid_argument(
            "SchemeSpec.user: no outage model is defined for irs_oma/u2");
}

std::string SchemeSpec::label() const {
    std::string s = to_string(scheme);
    if (strategy) s += "_" + to_string(*strategy);
    s += "_" + to_string(user);
    return s;
}

WilsonInterval wilson_interval(std::uint64_t count, std::uint64_t trials,
                               double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Rounding must not push the point estimate outside its own interval.
    return {std::min(p, std::max(0.0, center - half)),
            std::max(p, std::min(1.0, center + half))};
}

namespace {

// Everything a trial needs, resolved once per run so the inner loop does
// no pow/exp work.
struct TrialParams {
    Scheme scheme;
    Strategy strategy = Strategy::coherent;
    User user;
    std::size_t n = 1;
    std::size_t q = 1;
    bool feasible = true;
    double eps1 = 0.0;          // NOMA U1 gain_sq threshold
    double eps2 = 0.0;          // IRS-OMA U1 gain_sq threshold
    double relay_u1_gap = 0.0;  // |h|^2 thresholds for the relay hops
    double relay_u1_gap12 = 0.0;
    double relay_u2_gap = 0.0;
    double snr = 0.0;
    double c1_sq = 0.0, c2_sq = 0.0;
    double eps = 0.0;     // U1 rate SINR threshold (NOMA SIC stage 1)
    double eps_u2 = 0.0;  // 2^{R2} - 1 (NOMA SIC stage 2)
    double w_direct = 0.0, w_reflect = 0.0;  // amplitude weights for U2
};

struct TrialScratch {
    std::vector<cplx> g0, g1, g2;
    PhaseShiftVector theta, scratch;
};

TrialParams make_trial_params(const SchemeSpec& spec, const ScenarioConfig& cfg,
                              const DerivedThresholds& t) {
    spec.validate();
    cfg.validate();
    TrialParams p;
    p.scheme = spec.scheme;
    if (spec.strategy) p.strategy = *spec.strategy;
    p.user = spec.user;
    p.n = static_cast<std::size_t>(cfg.N);
    p.q = static_cast<std::size_t>(cfg.Q);
    p.feasible = t.feasible;
    p.eps1 = t.eps1;
    p.eps2 = t.eps2;
    p.snr = t.snr_linear;
    p.c1_sq = cfg.c1_sq;
    p.c2_sq = cfg.c2_sq;
    p.eps = t.eps;
    p.eps_u2 = std::exp2(cfg.R2) - 1.0;
    const double gap_u1 = std::exp2(4.0 * cfg.R1) - 1.0;
    p.relay_u1_gap = std::pow(cfg.d2, cfg.alpha) * gap_u1 / t.snr_linear;
    p.relay_u1_gap12 = std::pow(cfg.d12, cfg.alpha) * gap_u1 / t.snr_linear;
    p.relay_u2_gap =
        std::pow(cfg.d2, cfg.alpha) * (std::exp2(2.0 * cfg.R2) - 1.0) /
        t.snr_linear;
    p.w_direct = 1.0 / std::sqrt(std::pow(cfg.d2, cfg.alpha));
    p.w_reflect = 1.0 / std::sqrt(std::pow(cfg.dr, cfg.alpha) *
                                  std::pow(cfg.dr2, cfg.alpha));
    return p;
}

double norm_sq(cplx v) {
    return v.real() * v.real() + v.imag() * v.imag();
}

void draw_vector(std::vector<cplx>& out, std::size_t n, RngStream& rng) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample_cn01(rng);
}

// Effective gain for U1 under the configured strategy. Draw order is
// g0, g1, then any phase draws, so runs differing only in Q share their
// channel realizations and candidate prefix.
EffectiveGain u1_effective_gain(const TrialParams& p, RngStream& rng,
                                TrialScratch& ws) {
    draw_vector(ws.g0, p.n, rng);
    draw_vector(ws.g1, p.n, rng);
    switch (p.strategy) {
        case Strategy::coherent: {
            // Co-phased sum: xi = sum |g0_n g1_n|, real by construction.
            double s = 0.0;
            for (std::size_t i = 0; i < p.n; ++i)
                s += std::abs(ws.g0[i] * ws.g1[i]);
            return {cplx{s, 0.0}, s * s};
        }
        case Strategy::random:
            random_phases(p.n, rng, ws.theta);
            return effective_gain(ws.g0, ws.g1, ws.theta);
        case Strategy::select_q:
            return select_phases(ws.g0, ws.g1, p.q, rng, ws.theta, ws.scratch);
    }
    return {};
}

bool run_trial(const TrialParams& p, RngStream& rng, TrialScratch& ws) {
    switch (p.scheme) {
        case Scheme::relay: {
            const cplx h2 = sample_cn01(rng);
            if (p.user == User::u2) return norm_sq(h2) < p.relay_u2_gap;
            if (norm_sq(h2) < p.relay_u1_gap) return true;
            const cplx h12 = sample_cn01(rng);
            return norm_sq(h12) < p.relay_u1_gap12;
        }
        case Scheme::irs_oma: {
            // validate() already rejected u2.
            const EffectiveGain g = u1_effective_gain(p, rng, ws);
            return g.gain_sq < p.eps2;
        }
        case Scheme::irs_noma: {
            if (p.user == User::u1) {
                if (!p.feasible) return true;
                const EffectiveGain g = u1_effective_gain(p, rng, ws);
                return g.gain_sq < p.eps1;
            }
            // U2: the surface is configured for U1, so derive the phases
            // from (g0, g1) and apply them to g2.
            draw_vector(ws.g0, p.n, rng);
            draw_vector(ws.g1, p.n, rng);
            draw_vector(ws.g2, p.n, rng);
            const cplx h2 = sample_cn01(rng);
            switch (p.strategy) {
                case Strategy::coherent:
                    ws.theta = coherent_phases(ws.g0, ws.g1);
                    break;
                case Strategy::random:
                    random_phases(p.n, rng, ws.theta);
                    break;
                case Strategy::select_q:
                    select_phases(ws.g0, ws.g1, p.q, rng, ws.theta, ws.scratch);
                    break;
            }
            const EffectiveGain xi2 = effective_gain(ws.g0, ws.g2, ws.theta);
            const double x =
                norm_sq(p.w_direct * h2 + p.w_reflect * xi2.xi);
            // SIC: decode s1 treating s2 as noise, then decode s2.
            const double sinr1 =
                p.c1_sq * p.snr * x / (p.c2_sq * p.snr * x + 1.0);
            const bool ok = sinr1 >= p.eps && p.c2_sq * p.snr * x >= p.eps_u2;
            return !ok;
        }
    }
    return true;
}

unsigned resolve_workers(unsigned workers, std::uint64_t trials) {
    if (workers == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : hw;
    }
    if (trials < workers) workers = static_cast<unsigned>(trials);
    return std::max(1u, workers);
}

}  // namespace

bool trial_outage(const SchemeSpec& spec, const ScenarioConfig& cfg,
                  const DerivedThresholds& t, RngStream& rng) {
    const TrialParams p = make_trial_params(spec, cfg, t);
    TrialScratch ws;
    return run_trial(p, rng, ws);
}

OutageEstimate estimate_outage(const SchemeSpec& spec,
                               const ScenarioConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
    if (trials == 0)
        throw std::invalid_argument("estimate_outage: trials must be >= 1");
    const DerivedThresholds t = derive_thresholds(cfg);
    const TrialParams params = make_trial_params(spec, cfg, t);
    workers = resolve_workers(workers, trials);

    std::vector<std::uint64_t> counts(workers, 0);
    auto work = [&](unsigned w) {
        // Contiguous trial ranges; trial index is the substream id, so the
        // partition has no effect on the drawn samples.
        const std::uint64_t lo = trials * w / workers;
        const std::uint64_t hi = trials * (w + 1) / workers;
        TrialScratch ws;
        std::uint64_t c = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, i);
            c += run_trial(params, rng, ws) ? 1 : 0;
        }
        counts[w] = c;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::uint64_t outages = 0;
    for (const std::uint64_t c : counts) outages += c;

    OutageEstimate est;
    est.trials = trials;
    est.outage_count = outages;
    est.p_hat = static_cast<double>(outages) / static_cast<double>(trials);
    const WilsonInterval ci = wilson_interval(outages, trials, 1.959963984540054);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.seed = seed;
    return est;
}

std::vector<AnalyticComparator> applicable_analytics(
    const SchemeSpec& spec, const ScenarioConfig& cfg,
    const DerivedThresholds& t) {
    std::vector<AnalyticComparator> out;
    const auto add = [&out](std::string kind, double raw, bool vacuous = false) {
        out.push_back({std::move(kind), raw, vacuous});
    };
    if (spec.scheme == Scheme::relay) {
        add("exact", spec.user == User::u1 ? analysis::relay_outage_u1(cfg, t)
                                           : analysis::relay_outage_u2(cfg, t));
        return out;
    }
    if (spec.user == User::u2) return out;  // simulation-only by design

    const bool noma = spec.scheme == Scheme::irs_noma;
    const bool feasible = !noma || t.feasible;
    const double eps_i = noma ? t.eps1 : t.eps2;
    switch (*spec.strategy) {
        case Strategy::coherent:
            add("clt_approx",
                feasible ? analysis::coherent_clt_outage(cfg.N, eps_i) : 1.0);
            if (cfg.N % 2 == 0) {
                if (feasible) {
                    const auto b = analysis::coherent_upper_bound(cfg.N, eps_i);
                    add("coherent_upper_bound", b.raw, b.vacuous);
                    const auto h = analysis::coherent_high_snr_approx(cfg.N, eps_i);
                    add("coherent_high_snr", h.raw, h.vacuous);
                } else {
                    add("coherent_upper_bound", 1.0);
                    add("coherent_high_snr", 1.0);
                }
            }
            add("coherent_loose_bound",
                feasible ? analysis::coherent_loose_bound(cfg.N, eps_i) : 1.0);
            break;
        case Strategy::random:
            add("random_phase_approx",
                feasible ? analysis::random_phase_outage(cfg.N, eps_i) : 1.0);
            break;
        case Strategy::select_q:
            break;  // no closed form is offered for the selection scheme
    }
    return out;
}

std::vector<SweepPoint> sweep(const SchemeSpec& spec, const ScenarioConfig& cfg,
                              std::span<const double> powers_dbm,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned workers) {
    if (powers_dbm.empty())
        throw std::invalid_argument("sweep: power grid must be nonempty");
    std::vector<SweepPoint> out;
    out.reserve(powers_dbm.size());
    for (const double p : powers_dbm) {
        ScenarioConfig at = cfg;
        at.tx_power_dbm = p;
        SweepPoint pt;
        pt.power_dbm = p;
        pt.thresholds = derive_thresholds(at);
        pt.estimate = estimate_outage(spec, at, trials, seed, workers);
        pt.analytics = applicable_analytics(spec, at, pt.thresholds);
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace irsim
