#include "irsim/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "irsim/analysis.hpp"

namespace irsim::run {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string opt_str(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

std::string opt_str(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string opt_str(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

void usage_fail(const std::string& what) {
    throw std::invalid_argument(what);
}

}  // namespace

void PowerGrid::validate() const {
    if (!std::isfinite(start_dbm) || !std::isfinite(stop_dbm) ||
        start_dbm > stop_dbm)
        usage_fail("power grid: requires start_dbm <= stop_dbm");
    if (!std::isfinite(step_db) || step_db <= 0.0)
        usage_fail("power grid: requires step_db > 0");
}

std::vector<double> PowerGrid::points() const {
    validate();
    std::vector<double> out;
    for (double p = start_dbm; p <= stop_dbm + 1e-9; p += step_db)
        out.push_back(p);
    return out;
}

void RunManifest::validate() const {
    if (command == Command::preset) {
        if (preset_name != "fig1" && preset_name != "fig2" &&
            preset_name != "fig3")
            usage_fail("preset: unknown preset '" + preset_name +
                       "' (expected fig1, fig2 or fig3)");
    }
    if (command == Command::sweep) {
        if (!parse_scheme(scheme))
            usage_fail("scheme: unknown scheme '" + scheme + "'");
        if (!strategy.empty() && !parse_strategy(strategy))
            usage_fail("strategy: unknown strategy '" + strategy + "'");
        if (!parse_user(user)) usage_fail("user: unknown user '" + user + "'");
    }
    grid.validate();
    if (trials < 1) usage_fail("trials: must be >= 1");
}

std::string csv_header() {
    return "curve,scheme,strategy,user,N,Q,power_dbm,trials,outage_count,"
           "p_hat,ci_low,ci_high,analytic_value,analytic_kind,seed";
}

std::string Dataset::to_csv() const {
    std::string out = csv_header() + "\n";
    for (const CsvRow& r : rows) {
        out += r.curve;
        out += ',';
        out += r.scheme;
        out += ',';
        out += r.strategy;
        out += ',';
        out += r.user;
        out += ',';
        out += opt_str(r.n);
        out += ',';
        out += opt_str(r.q);
        out += ',';
        out += fmt(r.power_dbm);
        out += ',';
        out += opt_str(r.trials);
        out += ',';
        out += opt_str(r.outage_count);
        out += ',';
        out += opt_str(r.p_hat);
        out += ',';
        out += opt_str(r.ci_low);
        out += ',';
        out += opt_str(r.ci_high);
        out += ',';
        out += opt_str(r.analytic_value);
        out += ',';
        out += r.analytic_kind;
        out += ',';
        out += opt_str(r.seed);
        out += '\n';
    }
    return out;
}

namespace {

std::string curve_base(const SchemeSpec& spec, const ScenarioConfig& cfg) {
    std::string base = spec.label();
    if (spec.scheme != Scheme::relay) {
        base += "_N" + std::to_string(cfg.N);
        if (spec.strategy == Strategy::select_q)
            base += "_Q" + std::to_string(cfg.Q);
    }
    return base;
}

void fill_identity(CsvRow& row, const SchemeSpec& spec,
                   const ScenarioConfig& cfg) {
    row.scheme = to_string(spec.scheme);
    if (spec.strategy) row.strategy = to_string(*spec.strategy);
    row.user = to_string(spec.user);
    if (spec.scheme != Scheme::relay) {
        row.n = cfg.N;
        if (spec.strategy == Strategy::select_q) row.q = cfg.Q;
    }
}

}  // namespace

void append_sweep_rows(Dataset& out, const SchemeSpec& spec,
                       const ScenarioConfig& cfg,
                       const std::vector<double>& grid, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
    const auto points = sweep(spec, cfg, grid, trials, seed, workers);
    const std::string base = curve_base(spec, cfg);

    for (const SweepPoint& pt : points) {
        CsvRow row;
        row.curve = base + "_sim";
        fill_identity(row, spec, cfg);
        row.power_dbm = pt.power_dbm;
        row.trials = pt.estimate.trials;
        row.outage_count = pt.estimate.outage_count;
        row.p_hat = pt.estimate.p_hat;
        row.ci_low = pt.estimate.ci_low;
        row.ci_high = pt.estimate.ci_high;
        row.seed = pt.estimate.seed;
        out.rows.push_back(std::move(row));
    }
    // Analytic curves, one block per kind, same grid order.
    if (!points.empty()) {
        for (std::size_t k = 0; k < points.front().analytics.size(); ++k) {
            for (const SweepPoint& pt : points) {
                const AnalyticComparator& a = pt.analytics[k];
                CsvRow row;
                row.curve = base + "_" + a.kind;
                fill_identity(row, spec, cfg);
                row.power_dbm = pt.power_dbm;
                row.analytic_value = a.raw;
                row.analytic_kind = a.kind;
                out.rows.push_back(std::move(row));
            }
        }
    }
}

Dataset run_sweep(const RunManifest& m, const ScenarioConfig& cfg) {
    m.validate();
    SchemeSpec spec;
    spec.scheme = *parse_scheme(m.scheme);
    spec.strategy = m.strategy.empty()
                        ? std::nullopt
                        : std::optional<Strategy>(*parse_strategy(m.strategy));
    spec.user = *parse_user(m.user);
    spec.validate();

    ScenarioConfig at = cfg;
    if (!m.n_list.empty()) {
        if (m.n_list.size() != 1)
            usage_fail("n: sweep mode takes a single N value");
        at.N = m.n_list.front();
    }
    if (!m.q_list.empty()) {
        if (m.q_list.size() != 1)
            usage_fail("q: sweep mode takes a single Q value");
        at.Q = m.q_list.front();
    }

    Dataset out;
    append_sweep_rows(out, spec, at, m.grid.points(), m.trials, m.seed,
                      m.workers);
    return out;
}

namespace {

void append_relay_rows(Dataset& out, const ScenarioConfig& cfg,
                       const std::vector<double>& grid, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
    SchemeSpec relay{Scheme::relay, std::nullopt, User::u1};
    append_sweep_rows(out, relay, cfg, grid, trials, seed, workers);
}

}  // namespace

Dataset run_preset(const RunManifest& m, const ScenarioConfig& cfg) {
    if (m.preset_name != "fig1" && m.preset_name != "fig2" &&
        m.preset_name != "fig3")
        usage_fail("preset: unknown preset '" + m.preset_name +
                   "' (expected fig1, fig2 or fig3)");
    const std::vector<double> grid = m.grid.points();
    Dataset out;

    if (m.preset_name == "fig1") {
        // Coherent phase shifting vs relaying, with CLT and upper bound.
        const std::vector<int> n_values =
            m.n_list.empty() ? std::vector<int>{16, 64} : m.n_list;
        append_relay_rows(out, cfg, grid, m.trials, m.seed, m.workers);
        for (const int n : n_values) {
            ScenarioConfig at = cfg;
            at.N = n;
            SchemeSpec noma{Scheme::irs_noma, Strategy::coherent, User::u1};
            SchemeSpec oma{Scheme::irs_oma, Strategy::coherent, User::u1};
            append_sweep_rows(out, noma, at, grid, m.trials, m.seed, m.workers);
            append_sweep_rows(out, oma, at, grid, m.trials, m.seed, m.workers);
        }
        return out;
    }

    if (m.preset_name == "fig2") {
        // Random phase shifting over an N sweep with its approximation.
        const std::vector<int> n_values =
            m.n_list.empty() ? std::vector<int>{16, 64, 256} : m.n_list;
        append_relay_rows(out, cfg, grid, m.trials, m.seed, m.workers);
        for (const int n : n_values) {
            ScenarioConfig at = cfg;
            at.N = n;
            SchemeSpec noma{Scheme::irs_noma, Strategy::random, User::u1};
            SchemeSpec oma{Scheme::irs_oma, Strategy::random, User::u1};
            append_sweep_rows(out, noma, at, grid, m.trials, m.seed, m.workers);
            append_sweep_rows(out, oma, at, grid, m.trials, m.seed, m.workers);
        }
        return out;
    }

    // fig3: phase-shift selection at fixed N over a Q sweep.
    const int n = m.n_list.empty() ? 64 : m.n_list.front();
    const std::vector<int> q_values =
        m.q_list.empty() ? std::vector<int>{1, 2, 4} : m.q_list;
    append_relay_rows(out, cfg, grid, m.trials, m.seed, m.workers);
    for (const int q : q_values) {
        ScenarioConfig at = cfg;
        at.N = n;
        at.Q = q;
        SchemeSpec noma{Scheme::irs_noma, Strategy::select_q, User::u1};
        SchemeSpec oma{Scheme::irs_oma, Strategy::select_q, User::u1};
        append_sweep_rows(out, noma, at, grid, m.trials, m.seed, m.workers);
        append_sweep_rows(out, oma, at, grid, m.trials, m.seed, m.workers);
    }
    return out;
}

namespace {

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
    return buf;
}

CheckResult relay_cross_check(std::uint64_t seed, unsigned workers) {
    ScenarioConfig cfg = default_scenario();
    cfg.tx_power_dbm = 32.0;
    const DerivedThresholds t = derive_thresholds(cfg);
    const double exact = analysis::relay_outage_u1(cfg, t);
    SchemeSpec spec{Scheme::relay, std::nullopt, User::u1};
    const OutageEstimate est = estimate_outage(spec, cfg, 1'000'000, seed, workers);
    const WilsonInterval ci =
        wilson_interval(est.outage_count, est.trials, 3.0);
    CheckResult r;
    r.name = "relay_closed_form";
    r.anchor = "two-hop quarter-rate relaying outage, exact expression";
    r.pass = exact >= ci.low && exact <= ci.high;
    r.detail = "exact=" + fmt(exact) + " sim=" + fmt(est.p_hat) + " ci3=[" +
               fmt(ci.low) + "," + fmt(ci.high) + "]";
    return r;
}

CheckResult coherent_n1_check(std::uint64_t seed, unsigned workers) {
    ScenarioConfig cfg = default_scenario();
    cfg.N = 1;
    cfg.tx_power_dbm = 31.168;  // puts eps1 near 1
    const DerivedThresholds t = derive_thresholds(cfg);
    const double exact = analysis::coherent_loose_bound(1, t.eps1);
    SchemeSpec spec{Scheme::irs_noma, Strategy::coherent, User::u1};
    const OutageEstimate est = estimate_outage(spec, cfg, 1'000'000, seed, workers);
    const WilsonInterval ci =
        wilson_interval(est.outage_count, est.trials, 3.0);
    CheckResult r;
    r.name = "coherent_exact_n1";
    r.anchor = "P(|xi_1|^2 < eps) = 1 - 2 sqrt(eps) K1(2 sqrt(eps))";
    r.pass = exact >= ci.low && exact <= ci.high;
    r.detail = "eps1=" + fmt(t.eps1) + " exact=" + fmt(exact) + " sim=" +
               fmt(est.p_hat) + " ci3=[" + fmt(ci.low) + "," + fmt(ci.high) +
               "]";
    return r;
}

CheckResult clt_low_snr_check(std::uint64_t seed, unsigned workers) {
    ScenarioConfig cfg = default_scenario();
    cfg.N = 16;
    cfg.tx_power_dbm = 8.0;  // outage well above 0.1
    const DerivedThresholds t = derive_thresholds(cfg);
    const double approx = analysis::coherent_clt_outage(cfg.N, t.eps1);
    SchemeSpec spec{Scheme::irs_noma, Strategy::coherent, User::u1};
    const OutageEstimate est = estimate_outage(spec, cfg, 1'000'000, seed, workers);
    const double rel = std::abs(approx - est.p_hat) / est.p_hat;
    CheckResult r;
    r.name = "clt_low_snr";
    r.anchor = "Gaussian approximation of the co-phased sum, low SNR regime";
    r.pass = est.p_hat > 0.1 && rel < 0.15;
    r.detail = "sim=" + fmt(est.p_hat) + " clt=" + fmt(approx) +
               " rel_err=" + pct(rel);
    return r;
}

CheckResult random_phase_check(std::uint64_t seed, unsigned workers) {
    ScenarioConfig cfg = default_scenario();
    cfg.N = 64;
    cfg.tx_power_dbm = 24.0;  // outage in [0.01, 0.9]
    const DerivedThresholds t = derive_thresholds(cfg);
    const double approx = analysis::random_phase_outage(cfg.N, t.eps1);
    SchemeSpec spec{Scheme::irs_noma, Strategy::random, User::u1};
    const OutageEstimate est = estimate_outage(spec, cfg, 1'000'000, seed, workers);
    const double rel = std::abs(approx - est.p_hat) / est.p_hat;
    CheckResult r;
    r.name = "random_phase_approx";
    r.anchor = "1 - exp(-eps/N) from the complex Gaussian limit of xi_N";
    r.pass = est.p_hat >= 0.01 && est.p_hat <= 0.9 && rel < 0.05;
    r.detail = "sim=" + fmt(est.p_hat) + " approx=" + fmt(approx) +
               " rel_err=" + pct(rel);
    return r;
}

}  // namespace

std::string ValidationReport::to_string() const {
    std::ostringstream ss;
    for (const auto& f : fits) ss << f.to_string();
    for (const auto& c : cross_checks)
        ss << (c.pass ? "PASS" : "FAIL") << " " << c.name << "  [" << c.anchor
           << "]\n  " << c.detail << "\n";
    ss << (pass ? "VALIDATION PASSED" : "VALIDATION FAILED") << "\n";
    return ss.str();
}

ValidationReport run_validate(std::uint64_t seed, unsigned workers) {
    ValidationReport report;
    report.fits.push_back(stats::test_product_channel(1'000'000, seed, workers));
    report.fits.push_back(stats::test_xi1_laplace(1'000'000, seed + 1, workers));
    report.fits.push_back(
        stats::test_xi_gaussian_limit(64, 1'000'000, seed + 2, workers));
    report.cross_checks.push_back(relay_cross_check(seed + 3, workers));
    report.cross_checks.push_back(coherent_n1_check(seed + 4, workers));
    report.cross_checks.push_back(clt_low_snr_check(seed + 5, workers));
    report.cross_checks.push_back(random_phase_check(seed + 6, workers));

    report.pass = true;
    for (const auto& f : report.fits) report.pass = report.pass && f.pass;
    for (const auto& c : report.cross_checks)
        report.pass = report.pass && c.pass;
    return report;
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{
        "irsim: outage-probability simulator and closed-form library for "
        "IRS-assisted NOMA/OMA downlinks"};
    app.get_formatter()->column_width(34);

    RunManifest m;
    bool validate_flag = false;
    std::string preset, scheme, strategy, user = "u1";

    app.add_option("--config", m.config_path,
                   "Scenario config file (flat JSON)");
    app.add_option("--preset", preset, "Experiment preset: fig1|fig2|fig3");
    app.add_flag("--validate", validate_flag,
                 "Run the statistical validation battery");
    app.add_option("--scheme", scheme, "Sweep scheme: irs_noma|irs_oma|relay");
    app.add_option("--strategy", strategy,
                   "Phase strategy: coherent|random|select_q");
    app.add_option("--user", user, "User: u1|u2 (default u1)");
    app.add_option("--power-start", m.grid.start_dbm,
                   "Sweep start, dBm (default 20)");
    app.add_option("--power-stop", m.grid.stop_dbm,
                   "Sweep stop, dBm (default 50)");
    app.add_option("--power-step", m.grid.step_db,
                   "Sweep step, dB (default 2)");
    app.add_option("--trials", m.trials,
                   "Monte Carlo trials per point (default 1e6)");
    app.add_option("--seed", m.seed, "Master RNG seed (default 1)");
    app.add_option("--out", m.out_path, "Output CSV path (default stdout)");
    app.add_option("--threads", m.workers,
                   "Worker threads (default: hardware)");
    app.add_option("--n", m.n_list,
                   "Override N (repeatable for preset N lists)");
    app.add_option("--q", m.q_list,
                   "Override Q (repeatable for the fig3 Q list)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const int modes = (validate_flag ? 1 : 0) + (preset.empty() ? 0 : 1) +
                          (scheme.empty() ? 0 : 1);
        if (modes != 1)
            usage_fail(
                "choose exactly one mode: --validate, --preset <name>, or "
                "--scheme <name>");

        ScenarioConfig cfg = m.config_path.empty()
                                 ? default_scenario()
                                 : load_config(m.config_path);

        if (validate_flag) {
            const ValidationReport report = run_validate(m.seed, m.workers);
            std::cout << report.to_string();
            return report.pass ? 0 : 1;
        }

        Dataset data;
        if (!preset.empty()) {
            m.command = Command::preset;
            m.preset_name = preset;
            data = run_preset(m, cfg);
        } else {
            m.command = Command::sweep;
            m.scheme = scheme;
            m.strategy = strategy;
            m.user = user;
            data = run_sweep(m, cfg);
        }

        if (m.out_path.empty()) {
            std::cout << data.to_csv();
        } else {
            std::ofstream out(m.out_path, std::ios::binary);
            if (!out)
                usage_fail("cannot write output file '" + m.out_path + "'");
            out << data.to_csv();
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace irsim::run
