#pragma once

#include "irsim/scenario.hpp"

// Closed-form outage probabilities, approximations and bounds for the
// three transmission schemes. Everything here is pure and thread-safe.
// Probability-valued results are clamped to [0,1]; bound-valued results
// expose the raw value plus a flag marking values that exceeded 1.

namespace irsim::analysis {

// Mean and standard deviation of |g0_n g1_n| for CN(0,1) factors:
// pi/4 and sqrt(1 - pi^2/16).
double product_channel_mean();
double product_channel_sigma();

struct BoundValue {
    double raw = 0.0;
    bool vacuous = false;  // raw > 1, bound carries no information
    double clamped() const { return raw < 1.0 ? (raw > 0.0 ? raw : 0.0) : 1.0; }
};

// Decode-and-forward relaying, U1: two hops at quarter rate, Rayleigh
// fading, exact expression.
double relay_outage_u1(const ScenarioConfig& cfg, const DerivedThresholds& t);

// Relaying / direct transmission to U2 at half rate, exact.
double relay_outage_u2(const ScenarioConfig& cfg, const DerivedThresholds& t);

// Gaussian (CLT) approximation of P(xi_N < sqrt(eps_i)) for the coherent
// scheme. Serves NOMA with eps1 and IRS-OMA with eps2.
double coherent_clt_outage(int n, double eps_i);

// Upper bound on the coherent outage for even n, evaluated in the log
// domain as exp(n ln(pi/(2 sqrt 2))) * P(3n/2, 2 sqrt(eps1)); the
// coefficient collapses because Gamma(3n/2) cancels the factorial.
BoundValue coherent_upper_bound(int n, double eps1);

// Small-eps1 limit of the upper bound: pi^n eps1^{3n/4} / Gamma(3n/2 + 1).
// Exhibits the 3n/4 diversity slope.
BoundValue coherent_high_snr_approx(int n, double eps1);

// Single-element bound (1 - 2 sqrt(eps1) K1(2 sqrt(eps1)))^n. Loose for
// large n but shows full diversity n; exact at n = 1 where it equals the
// product-channel CDF.
double coherent_loose_bound(int n, double eps1);

// Random phase shifting: 1 - exp(-eps_i / n), from the large-n complex
// Gaussian limit of xi_N. Diversity order one.
double random_phase_outage(int n, double eps_i);

}  // namespace irsim::analysis
