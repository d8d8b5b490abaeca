#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm, double whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::abs(whole) * rel_tol + 1e-300;
    return simpson(f, a, fa, b, fb, fm, whole, tol, 60);
}

double bessel_k0(double x) {
    if (x <= 0.0) throw std::invalid_argument("oracle k0: x must be > 0");
    // exp(-x cosh t) underflows once x cosh t > ~745.
    const double tmax = std::acosh(746.0 / x + 1.0);
    return integrate([x](double t) { return std::exp(-x * std::cosh(t)); },
                     0.0, tmax, 1e-13);
}

double bessel_k1(double x) {
    if (x <= 0.0) throw std::invalid_argument("oracle k1: x must be > 0");
    const double tmax = std::acosh(746.0 / x + 1.0);
    return integrate(
        [x](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(t); },
        0.0, tmax, 1e-13);
}

double reg_lower_gamma(double s, double x) {
    if (s <= 0.0 || x < 0.0)
        throw std::invalid_argument("oracle P(s,x): bad domain");
    if (x == 0.0) return 0.0;
    // gamma(s,x) = x^s sum_k (-1)^k x^k / (k! (s+k)); scaled by
    // exp(s ln x - lnGamma(s)) to produce the regularized value.
    const long double ls = static_cast<long double>(s);
    const long double lx = static_cast<long double>(x);
    long double term = 1.0L;  // (-1)^k x^k / k!
    long double sum = 0.0L;
    for (int k = 0; k < 100000; ++k) {
        const long double add = term / (ls + k);
        sum += add;
        term *= -lx / (k + 1);
        if (std::abs(term / (ls + k + 1)) < std::abs(sum) * 1e-21L && k > 3)
            break;
    }
    const long double ln_p =
        ls * std::log(lx) - static_cast<long double>(ln_gamma(s));
    return static_cast<double>(std::exp(ln_p) * sum);
}

double ln_gamma(double s) {
    if (s <= 0.0) throw std::invalid_argument("oracle ln_gamma: s must be > 0");
    // Shift s upward so the Stirling tail converges to < 1e-20.
    long double z = static_cast<long double>(s);
    long double shift = 0.0L;
    while (z < 20.0L) {
        shift -= std::log(z);
        z += 1.0L;
    }
    static const long double kB[8] = {
        1.0L / 6.0L,      -1.0L / 30.0L,    1.0L / 42.0L,   -1.0L / 30.0L,
        5.0L / 66.0L,     -691.0L / 2730.0L, 7.0L / 6.0L,   -3617.0L / 510.0L};
    const long double half_log_2pi = 0.91893853320467274178032973640562L;
    long double out = (z - 0.5L) * std::log(z) - z + half_log_2pi;
    long double zp = z;
    for (int k = 0; k < 8; ++k) {
        out += kB[k] / (2.0L * (k + 1) * (2.0L * (k + 1) - 1.0L) * zp);
        zp *= z * z;
    }
    return static_cast<double>(out + shift);
}

double erf(double x) {
    // 2/sqrt(pi) sum (-1)^k x^{2k+1} / (k! (2k+1)); fine for |x| <= ~4.
    const long double lx = static_cast<long double>(x);
    long double term = lx;  // x^{2k+1} / k!
    long double sum = 0.0L;
    for (int k = 0; k < 400; ++k) {
        sum += term / (2 * k + 1);
        term *= -lx * lx / (k + 1);
        if (std::abs(term) < 1e-25L) break;
    }
    const long double two_over_sqrt_pi = 1.1283791670955125738961589031215L;
    return static_cast<double>(two_over_sqrt_pi * sum);
}

double coherent_upper_bound_raw(int n, double eps1) {
    if (n < 2 || n % 2 != 0 || n > 16)
        throw std::invalid_argument("oracle bound: n must be small and even");
    const long double pi = 3.14159265358979323846264338327950L;
    const long double gamma_3_2 = 0.88622692545275801364908374167057L;  // sqrt(pi)/2
    const int nbar = n / 2;
    long double fact = 1.0L;  // (3 nbar - 1)!
    for (int k = 2; k <= 3 * nbar - 1; ++k) fact *= k;
    const long double coef = std::pow(2.0L, static_cast<long double>(n)) *
                             std::pow(pi, n / 2.0L) *
                             std::pow(gamma_3_2, static_cast<long double>(n)) /
                             fact * std::pow(2.0L, -3.0L * nbar);
    // gamma_lower(3 nbar, x) = Gamma(3 nbar) * P(3 nbar, x)
    long double gam = 1.0L;  // Gamma(3 nbar) = (3 nbar - 1)!
    for (int k = 2; k <= 3 * nbar - 1; ++k) gam *= k;
    const long double p =
        static_cast<long double>(reg_lower_gamma(3.0 * nbar, 2.0 * std::sqrt(eps1)));
    return static_cast<double>(coef * gam * p);
}

}  // namespace oracles
