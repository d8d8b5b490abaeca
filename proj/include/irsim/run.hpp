#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irsim/montecarlo.hpp"
#include "irsim/stats.hpp"

// Experiment front end: power-sweep datasets with a stable CSV schema,
// the bundled figure presets, and the validation battery.

namespace irsim::run {

struct PowerGrid {
    double start_dbm = 20.0;
    double stop_dbm = 50.0;
    double step_db = 2.0;

    void validate() const;
    std::vector<double> points() const;
};

enum class Command { sweep, validate, preset };

struct RunManifest {
    Command command = Command::sweep;
    std::string config_path;  // empty: built-in default scenario
    std::string preset_name;  // fig1 | fig2 | fig3
    std::string scheme;
    std::string strategy;  // empty for relay
    std::string user = "u1";
    PowerGrid grid;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string out_path;  // empty: stdout
    unsigned workers = 0;
    std::vector<int> n_list;  // overrides cfg.N / preset N values
    std::vector<int> q_list;  // overrides cfg.Q / preset Q values

    void validate() const;  // usage errors as std::invalid_argument
};

// One CSV row; a row is either a simulated curve point (analytic columns
// empty) or an analytic curve point (simulation columns empty).
struct CsvRow {
    std::string curve;
    std::string scheme;
    std::string strategy;
    std::string user;
    std::optional<int> n;
    std::optional<int> q;
    double power_dbm = 0.0;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> outage_count;
    std::optional<double> p_hat;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<double> analytic_value;  // raw, so vacuous bounds stay visible
    std::string analytic_kind;
    std::optional<std::uint64_t> seed;
};

std::string csv_header();

struct Dataset {
    std::vector<CsvRow> rows;
    std::string to_csv() const;  // header + rows, UTF-8, LF
};

// Appends sim + analytic rows for one (spec, cfg) sweep.
void append_sweep_rows(Dataset& out, const SchemeSpec& spec,
                       const ScenarioConfig& cfg,
                       const std::vector<double>& grid, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers);

Dataset run_sweep(const RunManifest& m, const ScenarioConfig& cfg);

// fig1: coherent phase shifting, small and large N, with the CLT curve and
//       the analytical upper bound, against exact relaying.
// fig2: random phase shifting over an N sweep with its exponential
//       approximation, against exact relaying.
// fig3: phase-shift selection at N = 64 for Q in {1, 2, 4}, against exact
//       relaying.
Dataset run_preset(const RunManifest& m, const ScenarioConfig& cfg);

struct CheckResult {
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<stats::FitReport> fits;
    std::vector<CheckResult> cross_checks;
    bool pass = true;

    std::string to_string() const;
};

// Distribution-fit battery plus closed-form vs simulation cross-checks.
// Sample counts are fixed (thresholds are sized for them).
ValidationReport run_validate(std::uint64_t seed, unsigned workers);

// Full CLI. Exit codes: 0 success, 1 validation failure, 2 usage error.
int main_entry(int argc, const char* const* argv);

}  // namespace irsim::run
