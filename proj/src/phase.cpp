#include "irsim/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace irsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b)
        throw std::invalid_argument("phase: vector length mismatch (" +
                                    std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
}

}  // namespace

EffectiveGain effective_gain(std::span<const cplx> g0, std::span<const cplx> gi,
                             std::span<const double> theta) {
    check_lengths(g0.size(), gi.size());
    check_lengths(g0.size(), theta.size());
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < g0.size(); ++n) {
        const cplx prod = g0[n] * gi[n];
        const double c = std::cos(theta[n]);
        const double s = std::sin(theta[n]);
        // e^{-j theta} * prod
        re += c * prod.real() + s * prod.imag();
        im += c * prod.imag() - s * prod.real();
    }
    EffectiveGain out;
    out.xi = {re, im};
    out.gain_sq = re * re + im * im;
    return out;
}

PhaseShiftVector coherent_phases(std::span<const cplx> g0,
                                 std::span<const cplx> gi) {
    check_lengths(g0.size(), gi.size());
    PhaseShiftVector theta(g0.size());
    for (std::size_t n = 0; n < g0.size(); ++n) {
        double a = std::arg(g0[n] * gi[n]);  // (-pi, pi], arg(0) = 0
        if (a < 0.0) a += kTwoPi;
        theta[n] = a;
    }
    return theta;
}

void random_phases(std::size_t n, RngStream& rng, PhaseShiftVector& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = kTwoPi * rng.next_unit();
}

PhaseShiftVector random_phases(std::size_t n, RngStream& rng) {
    PhaseShiftVector out;
    random_phases(n, rng, out);
    return out;
}

EffectiveGain select_phases(std::span<const cplx> g0, std::span<const cplx> g1,
                            std::size_t q, RngStream& rng,
                            PhaseShiftVector& best, PhaseShiftVector& scratch) {
    check_lengths(g0.size(), g1.size());
    if (q < 1) throw std::invalid_argument("select_phases: q must be >= 1");
    EffectiveGain best_gain;
    bool have_best = false;
    for (std::size_t k = 0; k < q; ++k) {
        random_phases(g0.size(), rng, scratch);
        const EffectiveGain g = effective_gain(g0, g1, scratch);
        if (!have_best || g.gain_sq > best_gain.gain_sq) {
            best_gain = g;
            have_best = true;
            std::swap(best, scratch);
        }
    }
    return best_gain;
}

PhaseShiftVector select_phases(std::span<const cplx> g0,
                               std::span<const cplx> g1, std::size_t q,
                               RngStream& rng) {
    PhaseShiftVector best, scratch;
    select_phases(g0, g1, q, rng, best, scratch);
    return best;
}

}  // namespace irsim
