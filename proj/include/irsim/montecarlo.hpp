#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irsim/analysis.hpp"
#include "irsim/channel.hpp"
#include "irsim/scenario.hpp"

namespace irsim {

enum class Scheme { irs_noma, irs_oma, relay };
enum class Strategy { coherent, random, select_q };
enum class User { u1, u2 };

std::string to_string(Scheme s);
std::string to_string(Strategy s);
std::string to_string(User u);
std::optional<Scheme> parse_scheme(const std::string& s);
std::optional<Strategy> parse_strategy(const std::string& s);
std::optional<User> parse_user(const std::string& s);

// What one Monte Carlo run measures. The relay scheme carries no phase
// strategy; the IRS schemes require one. The outage event for irs_oma/u2
// is not modeled, so that combination is rejected.
struct SchemeSpec {
    Scheme scheme = Scheme::irs_noma;
    std::optional<Strategy> strategy = Strategy::coherent;
    User user = User::u1;

    void validate() const;  // throws std::invalid_argument
    std::string label() const;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Score interval for a binomial proportion; z is the normal quantile
// (1.96 for 95%). Behaves sanely down to zero-count rare events.
WilsonInterval wilson_interval(std::uint64_t count, std::uint64_t trials,
                               double z);

struct OutageEstimate {
    std::uint64_t trials = 0;
    std::uint64_t outage_count = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;   // 95% Wilson
    double ci_high = 1.0;  // 95% Wilson
    std::uint64_t seed = 0;
};

// One Bernoulli outage indicator drawn from the given stream.
bool trial_outage(const SchemeSpec& spec, const ScenarioConfig& cfg,
                  const DerivedThresholds& t, RngStream& rng);

// Runs `trials` independent trials; trial i consumes RngStream(seed, i),
// so the result is a pure function of (spec, cfg, trials, seed) no matter
// how many workers execute it. workers = 0 picks the hardware count.
OutageEstimate estimate_outage(const SchemeSpec& spec,
                               const ScenarioConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 0);

// A closed-form companion value for a simulated curve.
struct AnalyticComparator {
    std::string kind;
    double raw = 0.0;
    bool vacuous = false;
};

// The analytical curves that apply to a given spec at the given operating
// point. Infeasible NOMA power splits pin every probability curve to 1.
std::vector<AnalyticComparator> applicable_analytics(
    const SchemeSpec& spec, const ScenarioConfig& cfg,
    const DerivedThresholds& t);

struct SweepPoint {
    double power_dbm = 0.0;
    DerivedThresholds thresholds;
    OutageEstimate estimate;
    std::vector<AnalyticComparator> analytics;
};

// Re-derives thresholds and runs estimate_outage at every power in the
// grid, attaching the applicable analytical values.
std::vector<SweepPoint> sweep(const SchemeSpec& spec, const ScenarioConfig& cfg,
                              std::span<const double> powers_dbm,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned workers = 0);

}  // namespace irsim
