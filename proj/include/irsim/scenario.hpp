#pragma once

#include <string>

namespace irsim {

// Full experiment parameterization: geometry in meters, powers in dBm,
// rates in bits per channel use. One transmit-power field serves every
// scheme (source, relay and the per-user OMA slots all use equal power).
struct ScenarioConfig {
    double d2 = 20.0;    // source -> U2 distance
    double dr = 20.0;    // source -> IRS distance
    double dr1 = 10.0;   // IRS -> U1 distance
    double dr2 = 10.0;   // IRS -> U2 distance
    double d12 = 10.0;   // U2 -> U1 distance
    double alpha = 4.0;  // path loss exponent
    double c1_sq = 0.8;  // power allocation, far user
    double c2_sq = 0.2;  // power allocation, near user
    double R1 = 1.8;     // U1 target rate, BPCU
    double R2 = 1.0;     // U2 target rate, BPCU
    int N = 16;          // reflecting elements
    int Q = 1;           // candidate phase sets for the selection scheme
    double tx_power_dbm = 30.0;
    double noise_power_dbm = -70.0;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// SINR thresholds shared by the analytical formulas and the trial engine.
// All formulas consume the noise-normalized power snr_linear, so the
// config's dBm axis and the analysis agree. When the power split cannot
// support U1's rate (c1^2 <= eps * c2^2) feasible is false, eps1 is +inf
// and downstream NOMA outage is pinned to 1.
struct DerivedThresholds {
    double eps = 0.0;         // 2^R1 - 1
    double eps1 = 0.0;        // |xi|^2 outage threshold, NOMA U1
    double eps2 = 0.0;        // |xi|^2 outage threshold, IRS-OMA U1
    double snr_linear = 0.0;  // tx power over noise power
    bool feasible = false;
};

double dbm_to_linear(double dbm);

DerivedThresholds derive_thresholds(const ScenarioConfig& cfg);

// The reference parameter set used by the bundled experiment presets.
ScenarioConfig default_scenario();

// Flat key/value JSON with keys exactly matching the field names above.
// Missing keys fall back to default_scenario() values; unknown keys are an
// error. The loaded config is validated.
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& cfg, const std::string& path);
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& cfg);

}  // namespace irsim
