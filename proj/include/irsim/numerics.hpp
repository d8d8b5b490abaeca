#pragma once

// Special functions backing the closed-form outage expressions: modified
// Bessel functions K0/K1, the regularized lower incomplete gamma P(s,x)
// (plus a log-domain variant that stays finite for large shape s), log-gamma
// and the error function.
//
// All functions are pure and thread-safe. Domain violations throw
// std::domain_error.

namespace irsim::numerics {

// K0(x), modified Bessel function of the second kind, order zero.
// Requires x > 0 and finite. Relative error <= 1e-10 on [1e-8, 50].
double bessel_k0(double x);

// K1(x), order one. Same domain and accuracy contract as bessel_k0.
double bessel_k1(double x);

// P(s,x) = gamma_lower(s,x) / Gamma(s). Requires s > 0, x >= 0.
// Nondecreasing in x, P(s,0) = 0, P(s,inf) = 1.
double reg_lower_gamma(double s, double x);

// log P(s,x). Finite (or -inf at x = 0) even where P underflows double,
// which happens for large s and small x.
double ln_reg_lower_gamma(double s, double x);

// log Gamma(s) for s > 0.
double ln_gamma(double s);

// erf(x) = 2/sqrt(pi) * integral_0^x exp(-t^2) dt. Requires finite x.
double phi_erf(double x);

}  // namespace irsim::numerics
