#include "irsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "irsim/numerics.hpp"

namespace irsim::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

void check_n(int n, int min_n, const char* fn) {
    if (n < min_n)
        throw std::invalid_argument(std::string(fn) + ": n must be >= " +
                                    std::to_string(min_n));
}

void check_eps(double eps, const char* fn) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::invalid_argument(std::string(fn) +
                                    ": threshold must be finite and >= 0");
}

}  // namespace

double product_channel_mean() {
    return 0.25 * kPi;
}

double product_channel_sigma() {
    return std::sqrt(1.0 - kPi * kPi / 16.0);
}

double relay_outage_u1(const ScenarioConfig& cfg, const DerivedThresholds& t) {
    const double gap = std::exp2(4.0 * cfg.R1) - 1.0;
    const double a = std::pow(cfg.d2, cfg.alpha) * gap / t.snr_linear;
    const double b = std::pow(cfg.d12, cfg.alpha) * gap / t.snr_linear;
    // First hop fails, or it succeeds and the U2 -> U1 hop fails.
    return -std::expm1(-a) + std::exp(-a) * (-std::expm1(-b));
}

double relay_outage_u2(const ScenarioConfig& cfg, const DerivedThresholds& t) {
    const double gap = std::exp2(2.0 * cfg.R2) - 1.0;
    return -std::expm1(-std::pow(cfg.d2, cfg.alpha) * gap / t.snr_linear);
}

double coherent_clt_outage(int n, double eps_i) {
    check_n(n, 1, "coherent_clt_outage");
    check_eps(eps_i, "coherent_clt_outage");
    const double mu = product_channel_mean();
    const double sigma = product_channel_sigma();
    const double z = std::sqrt(static_cast<double>(n)) *
                     (std::sqrt(eps_i) / n - mu) /
                     (std::numbers::sqrt2 * sigma);
    const double p = 0.5 + 0.5 * numerics::phi_erf(z);
    return std::clamp(p, 0.0, 1.0);
}

BoundValue coherent_upper_bound(int n, double eps1) {
    check_n(n, 2, "coherent_upper_bound");
    if (n % 2 != 0)
        throw std::invalid_argument("coherent_upper_bound: n must be even");
    check_eps(eps1, "coherent_upper_bound");
    BoundValue out;
    if (eps1 == 0.0) return out;
    const double ln_coef = n * std::log(kPi / (2.0 * std::numbers::sqrt2));
    const double ln_p =
        numerics::ln_reg_lower_gamma(1.5 * n, 2.0 * std::sqrt(eps1));
    out.raw = std::exp(ln_coef + ln_p);
    out.vacuous = out.raw > 1.0;
    return out;
}

BoundValue coherent_high_snr_approx(int n, double eps1) {
    check_n(n, 2, "coherent_high_snr_approx");
    if (n % 2 != 0)
        throw std::invalid_argument("coherent_high_snr_approx: n must be even");
    check_eps(eps1, "coherent_high_snr_approx");
    BoundValue out;
    if (eps1 == 0.0) return out;
    out.raw = std::exp(n * std::log(kPi) + 0.75 * n * std::log(eps1) -
                       numerics::ln_gamma(1.5 * n + 1.0));
    out.vacuous = out.raw > 1.0;
    return out;
}

double coherent_loose_bound(int n, double eps1) {
    check_n(n, 1, "coherent_loose_bound");
    check_eps(eps1, "coherent_loose_bound");
    if (eps1 == 0.0) return 0.0;
    const double x = 2.0 * std::sqrt(eps1);
    // x K1(x) <= 1 and e^{-x} underflow drives it to 0 for huge x.
    const double xk1 = (x < 700.0) ? x * numerics::bessel_k1(x) : 0.0;
    const double cdf = std::clamp(1.0 - xk1, 0.0, 1.0);
    return std::pow(cdf, n);
}

double random_phase_outage(int n, double eps_i) {
    check_n(n, 1, "random_phase_outage");
    check_eps(eps_i, "random_phase_outage");
    return -std::expm1(-eps_i / n);
}

}  // namespace irsim::analysis
