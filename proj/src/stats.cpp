#include "irsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irsim/analysis.hpp"
#include "irsim/numerics.hpp"
#include "irsim/phase.hpp"

namespace irsim::stats {

namespace {

unsigned resolve_workers(unsigned workers, std::uint64_t items) {
    if (workers == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : hw;
    }
    if (items < workers) workers = static_cast<unsigned>(items);
    return std::max(1u, workers);
}

// Fills out[i] = fn(stream(seed, i)) for i in [0, trials), split across
// workers in contiguous ranges. Output is independent of the split.
template <typename T, typename Fn>
std::vector<T> parallel_draw(std::uint64_t trials, std::uint64_t seed,
                             unsigned workers, Fn fn) {
    std::vector<T> out(trials);
    workers = resolve_workers(workers, trials);
    auto work = [&](unsigned w) {
        const std::uint64_t lo = trials * w / workers;
        const std::uint64_t hi = trials * (w + 1) / workers;
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, i);
            out[i] = fn(rng);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    return out;
}

struct Moments {
    double mean = 0.0, var = 0.0, skew = 0.0, excess_kurt = 0.0;
};

Moments sample_moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (const double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Moments out;
    out.mean = mean;
    out.var = m2;
    out.skew = m3 / std::pow(m2, 1.5);
    out.excess_kurt = m4 / (m2 * m2) - 3.0;
    return out;
}

double pearson_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

MomentCheck check(std::string name, double sample, double target, double tol) {
    MomentCheck c;
    c.name = std::move(name);
    c.sample = sample;
    c.target = target;
    c.tol = tol;
    c.pass = std::abs(sample - target) <= tol;
    return c;
}

}  // namespace

double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf) {
    if (sample.size() < 2)
        throw std::invalid_argument("ks_distance: need at least 2 samples");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument(
            "ks_distance_two_sample: need at least 2 samples each");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

double laplace_cdf(double x, double scale) {
    return x < 0.0 ? 0.5 * std::exp(x / scale)
                   : 1.0 - 0.5 * std::exp(-x / scale);
}

double normal_cdf(double x, double mean, double var) {
    return 0.5 * (1.0 + numerics::phi_erf((x - mean) /
                                          std::sqrt(2.0 * var)));
}

double product_abs_cdf(double y) {
    if (y <= 0.0) return 0.0;
    const double v = 2.0 * y;
    return v < 700.0 ? 1.0 - v * numerics::bessel_k1(v) : 1.0;
}

double product_sq_cdf(double x) {
    if (x <= 0.0) return 0.0;
    return product_abs_cdf(std::sqrt(x));
}

std::vector<cplx> sample_xi_random(int n, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers) {
    if (n < 1) throw std::invalid_argument("sample_xi_random: n must be >= 1");
    const std::size_t nn = static_cast<std::size_t>(n);
    return parallel_draw<cplx>(trials, seed, workers, [nn](RngStream& rng) {
        // Same draw order as the trial engine: g0, g1, then phases.
        thread_local std::vector<cplx> g0, g1;
        thread_local PhaseShiftVector theta;
        g0.resize(nn);
        g1.resize(nn);
        for (auto& v : g0) v = sample_cn01(rng);
        for (auto& v : g1) v = sample_cn01(rng);
        random_phases(nn, rng, theta);
        return effective_gain(g0, g1, theta).xi;
    });
}

std::vector<double> sample_product_abs(std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers) {
    return parallel_draw<double>(trials, seed, workers, [](RngStream& rng) {
        return std::abs(sample_cn01(rng) * sample_cn01(rng));
    });
}

std::string FitReport::to_string() const {
    std::ostringstream ss;
    ss << (pass ? "PASS" : "FAIL") << " " << name << "  [" << anchor << "]\n";
    if (has_ks)
        ss << "  ks_distance = " << ks << " (threshold " << ks_threshold
           << ")\n";
    for (const MomentCheck& m : moments)
        ss << "  " << (m.pass ? "ok  " : "FAIL") << " " << m.name << " = "
           << m.sample << " (target " << m.target << " +/- " << m.tol << ")\n";
    return ss.str();
}

FitReport test_xi1_laplace(std::uint64_t trials, std::uint64_t seed,
                           unsigned workers) {
    if (trials < 2)
        throw std::invalid_argument("test_xi1_laplace: trials must be >= 2");
    const auto xi = sample_xi_random(1, trials, seed, workers);
    std::vector<double> re(xi.size()), im(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        re[i] = xi[i].real();
        im[i] = xi[i].imag();
    }

    FitReport r;
    r.name = "xi1_laplace";
    r.anchor = "Re{xi_1} ~ Laplace(0, 1/2); Re and Im identically distributed";
    r.has_ks = true;
    r.ks = ks_distance(re, [](double x) { return laplace_cdf(x, 0.5); });
    r.ks_threshold = 0.003;

    const Moments m = sample_moments(re);
    // Var of the sample variance is (mu4 - sigma^4)/T = 1.25/T: tol 0.01 is
    // ~9 sigma at 1e6 trials.
    r.moments.push_back(check("var(Re)", m.var, 0.5, 0.01));
    r.moments.push_back(
        check("ks2(Re,Im)", ks_distance_two_sample(re, im), 0.0, 0.003));

    r.pass = r.ks < r.ks_threshold;
    for (const auto& c : r.moments) r.pass = r.pass && c.pass;
    return r;
}

FitReport test_xi_gaussian_limit(int n, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers) {
    if (trials < 2)
        throw std::invalid_argument(
            "test_xi_gaussian_limit: trials must be >= 2");
    const auto xi = sample_xi_random(n, trials, seed, workers);
    std::vector<double> re(xi.size()), im(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        re[i] = xi[i].real();
        im[i] = xi[i].imag();
    }
    const double half_n = 0.5 * n;

    FitReport r;
    r.name = "xi_gaussian_limit(n=" + std::to_string(n) + ")";
    r.anchor = "xi_N -> CN(0, N): components N(0, N/2), uncorrelated";
    r.has_ks = true;
    r.ks = ks_distance(
        re, [half_n](double x) { return normal_cdf(x, 0.0, half_n); });
    r.ks_threshold = 0.01;

    const Moments m = sample_moments(re);
    // Mean tolerance is 5 sigma of its estimator at 1e6 trials; skewness SE
    // is sqrt(6/T), excess-kurtosis SE sqrt(24/T).
    r.moments.push_back(
        check("mean(Re)", m.mean, 0.0, 5.0 * std::sqrt(half_n / trials)));
    r.moments.push_back(check("var(Re)", m.var, half_n, 0.02 * half_n));
    r.moments.push_back(check("skew(Re)", m.skew, 0.0, 0.05));
    r.moments.push_back(check("excess_kurt(Re)", m.excess_kurt, 0.0, 0.1));
    r.moments.push_back(check("corr(Re,Im)", pearson_corr(re, im), 0.0, 0.005));

    r.pass = r.ks < r.ks_threshold;
    for (const auto& c : r.moments) r.pass = r.pass && c.pass;
    return r;
}

FitReport test_product_channel(std::uint64_t trials, std::uint64_t seed,
                               unsigned workers) {
    if (trials < 2)
        throw std::invalid_argument(
            "test_product_channel: trials must be >= 2");
    const auto abs_sample = sample_product_abs(trials, seed, workers);
    std::vector<double> sq(abs_sample.size());
    for (std::size_t i = 0; i < abs_sample.size(); ++i)
        sq[i] = abs_sample[i] * abs_sample[i];

    FitReport r;
    r.name = "product_channel";
    r.anchor =
        "E|g0 g1| = pi/4, Var|g0 g1| = 1 - pi^2/16, "
        "P(|g0 g1|^2 <= x) = 1 - 2 sqrt(x) K1(2 sqrt(x))";
    r.has_ks = true;
    r.ks = ks_distance(sq, product_sq_cdf);
    r.ks_threshold = 0.003;

    const Moments m = sample_moments(abs_sample);
    r.moments.push_back(
        check("mean", m.mean, analysis::product_channel_mean(), 0.003));
    const double sigma = analysis::product_channel_sigma();
    r.moments.push_back(check("var", m.var, sigma * sigma, 0.003));

    r.pass = r.ks < r.ks_threshold;
    for (const auto& c : r.moments) r.pass = r.pass && c.pass;
    return r;
}

}  // namespace irsim::stats
