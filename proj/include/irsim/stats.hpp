#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "irsim/channel.hpp"

// Distribution-fit machinery: empirical-CDF distances plus the fixed test
// batteries that check the simulator's fading statistics against their
// closed-form targets.

namespace irsim::stats {

// Sup-norm distance between the empirical CDF of `sample` and a monotone
// target CDF. The sample is copied and sorted.
double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

// Target CDFs.
double laplace_cdf(double x, double scale);            // location 0
double normal_cdf(double x, double mean, double var);
double product_abs_cdf(double y);   // |g0 g1|   : 1 - 2 y K1(2 y)
double product_sq_cdf(double x);    // |g0 g1|^2 : 1 - 2 sqrt(x) K1(2 sqrt(x))

// Deterministic samplers; sample i uses RngStream(seed, i) so any worker
// split reproduces the same values.
std::vector<cplx> sample_xi_random(int n, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers = 0);
std::vector<double> sample_product_abs(std::uint64_t trials,
                                       std::uint64_t seed,
                                       unsigned workers = 0);

struct MomentCheck {
    std::string name;
    double sample = 0.0;
    double target = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct FitReport {
    std::string name;
    std::string anchor;  // the distributional fact being checked
    bool has_ks = false;
    double ks = 0.0;
    double ks_threshold = 0.0;
    std::vector<MomentCheck> moments;
    bool pass = true;

    std::string to_string() const;
};

// Single-element effective gain under random phases: Re{xi_1} is
// Laplace(0, 1/2) exactly, and Re/Im are identically distributed.
// Thresholds assume trials >= 1e5; at 1e6 the KS gate sits ~3 sigma above
// the Glivenko-Cantelli scale 1.36/sqrt(trials), false-fail < 1e-3.
FitReport test_xi1_laplace(std::uint64_t trials, std::uint64_t seed,
                           unsigned workers = 0);

// Large-n limit of xi_N under random phases: components Gaussian with
// variance n/2, uncorrelated. Passes for n >= 16 at 1e6 trials; at n = 1
// the kurtosis check fails by construction (Laplace excess kurtosis is 3).
FitReport test_xi_gaussian_limit(int n, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers = 0);

// Product channel |g0 g1|: mean pi/4, variance 1 - pi^2/16, squared
// magnitude CDF 1 - 2 sqrt(x) K1(2 sqrt(x)).
FitReport test_product_channel(std::uint64_t trials, std::uint64_t seed,
                               unsigned workers = 0);

}  // namespace irsim::stats
