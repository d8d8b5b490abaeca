#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "irsim/run.hpp"

using namespace irsim;
using namespace irsim::run;

namespace {

int count_lines(const std::string& s) {
    int n = 0;
    for (const char c : s) n += c == '\n';
    return n;
}

RunManifest small_sweep_manifest() {
    RunManifest m;
    m.command = Command::sweep;
    m.scheme = "irs_noma";
    m.strategy = "random";
    m.user = "u1";
    m.grid = {30.0, 34.0, 2.0};
    m.trials = 20'000;
    m.seed = 4242;
    m.workers = 1;
    return m;
}

}  // namespace

TEST_SUITE("run") {

TEST_CASE("power grid points") {
    const PowerGrid g{20.0, 26.0, 2.0};
    const auto pts = g.points();
    REQUIRE(pts.size() == 4);
    CHECK(pts.front() == 20.0);
    CHECK(pts.back() == 26.0);
    CHECK_THROWS_AS((PowerGrid{30.0, 20.0, 2.0}.points()),
                    std::invalid_argument);
    CHECK_THROWS_AS((PowerGrid{20.0, 30.0, 0.0}.points()),
                    std::invalid_argument);
}

TEST_CASE("manifest validation names the offending field") {
    RunManifest m = small_sweep_manifest();
    m.scheme = "warp_drive";
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("scheme"),
                         std::invalid_argument);
    m = small_sweep_manifest();
    m.trials = 0;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("trials"),
                         std::invalid_argument);
    m = small_sweep_manifest();
    m.preset_name = "fig9";
    m.command = Command::preset;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("preset"),
                         std::invalid_argument);
}

TEST_CASE("relay with a strategy flag is a usage error") {
    RunManifest m = small_sweep_manifest();
    m.scheme = "relay";
    m.strategy = "coherent";
    const ScenarioConfig cfg = default_scenario();
    CHECK_THROWS_AS(run_sweep(m, cfg), std::invalid_argument);
}

TEST_CASE("csv schema: header and one row per curve per power") {
    RunManifest m = small_sweep_manifest();
    m.grid = {30.0, 30.0, 1.0};  // single point
    ScenarioConfig cfg = default_scenario();
    cfg.N = 4;
    const Dataset d = run_sweep(m, cfg);
    const std::string csv = d.to_csv();
    CHECK(csv.rfind("curve,scheme,strategy,user,N,Q,power_dbm,trials,"
                    "outage_count,p_hat,ci_low,ci_high,analytic_value,"
                    "analytic_kind,seed\n",
                    0) == 0);
    // One sim row plus one analytic (random_phase_approx) row.
    CHECK(count_lines(csv) == 3);
    CHECK(csv.find("irs_noma_random_u1_N4_sim") != std::string::npos);
    CHECK(csv.find("random_phase_approx") != std::string::npos);
    // Analytic rows leave the simulation columns empty.
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    bool saw_analytic = false;
    while (std::getline(ss, line)) {
        if (line.find("random_phase_approx") == std::string::npos) continue;
        saw_analytic = true;
        // curve,scheme,strategy,user,N,Q,power,trials,outage,p,lo,hi,...
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 14);
        CHECK(cells[7].empty());   // trials
        CHECK(cells[8].empty());   // outage_count
        CHECK(cells[9].empty());   // p_hat
        CHECK_FALSE(cells[12].empty());  // analytic_value
    }
    CHECK(saw_analytic);
}

TEST_CASE("csv reruns are byte-identical, across worker counts too") {
    const ScenarioConfig cfg = default_scenario();
    RunManifest m = small_sweep_manifest();
    const std::string a = run_sweep(m, cfg).to_csv();
    const std::string b = run_sweep(m, cfg).to_csv();
    CHECK(a == b);
    m.workers = 3;
    const std::string c = run_sweep(m, cfg).to_csv();
    CHECK(a == c);
}

TEST_CASE("sweep honors single-value --n and --q overrides") {
    RunManifest m = small_sweep_manifest();
    m.strategy = "select_q";
    m.n_list = {8};
    m.q_list = {2};
    m.grid = {34.0, 34.0, 1.0};
    const Dataset d = run_sweep(m, default_scenario());
    CHECK(d.to_csv().find("irs_noma_select_q_u1_N8_Q2_sim") !=
          std::string::npos);
    m.n_list = {8, 16};
    CHECK_THROWS_AS(run_sweep(m, default_scenario()), std::invalid_argument);
}

TEST_CASE("random sweep stays within 5% of its approximation") {
    RunManifest m = small_sweep_manifest();
    m.trials = 400'000;
    m.n_list = {64};
    m.grid = {22.0, 26.0, 2.0};
    m.workers = 0;
    const Dataset d = run_sweep(m, default_scenario());
    // Pair sim rows with approx rows at the same power.
    std::istringstream ss(d.to_csv());
    std::string line;
    std::getline(ss, line);
    std::vector<double> sim_p, approx_v;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.find("_sim,") != std::string::npos ||
            cells[0].find("_sim") != std::string::npos)
            sim_p.push_back(std::stod(cells[9]));
        else
            approx_v.push_back(std::stod(cells[12]));
    }
    REQUIRE(sim_p.size() == 3);
    REQUIRE(approx_v.size() == 3);
    for (std::size_t i = 0; i < sim_p.size(); ++i) {
        if (sim_p[i] < 0.01 || sim_p[i] > 0.9) continue;
        CHECK(std::abs(approx_v[i] - sim_p[i]) / sim_p[i] < 0.05);
    }
}

TEST_CASE("preset fig1 schema") {
    RunManifest m;
    m.command = Command::preset;
    m.preset_name = "fig1";
    m.grid = {30.0, 32.0, 2.0};
    m.trials = 5'000;
    m.seed = 3;
    m.workers = 1;
    m.n_list = {4, 8};
    const Dataset d = run_preset(m, default_scenario());
    const std::string csv = d.to_csv();
    // relay + per N: noma sim, oma sim, clt, upper bound, high snr, loose.
    CHECK(csv.find("relay_u1_exact") != std::string::npos);
    CHECK(csv.find("irs_noma_coherent_u1_N4_sim") != std::string::npos);
    CHECK(csv.find("irs_oma_coherent_u1_N8_sim") != std::string::npos);
    CHECK(csv.find("clt_approx") != std::string::npos);
    CHECK(csv.find("coherent_upper_bound") != std::string::npos);
    // Byte-identical rerun.
    CHECK(run_preset(m, default_scenario()).to_csv() == csv);
}

TEST_CASE("preset fig3 contains per-Q curves") {
    RunManifest m;
    m.command = Command::preset;
    m.preset_name = "fig3";
    m.grid = {34.0, 34.0, 1.0};
    m.trials = 5'000;
    m.seed = 3;
    m.workers = 1;
    m.n_list = {8};
    m.q_list = {1, 2};
    const Dataset d = run_preset(m, default_scenario());
    const std::string csv = d.to_csv();
    CHECK(csv.find("irs_noma_select_q_u1_N8_Q1_sim") != std::string::npos);
    CHECK(csv.find("irs_noma_select_q_u1_N8_Q2_sim") != std::string::npos);
    CHECK(csv.find("relay_u1_exact") != std::string::npos);

    RunManifest bad = m;
    bad.preset_name = "fig7";
    CHECK_THROWS_AS(run_preset(bad, default_scenario()),
                    std::invalid_argument);
}

TEST_CASE("cli entry: usage errors exit 2, help exits 0") {
    const char* no_mode[] = {"irsim"};
    CHECK(main_entry(1, no_mode) == 2);
    const char* two_modes[] = {"irsim", "--validate", "--preset", "fig1"};
    CHECK(main_entry(4, two_modes) == 2);
    const char* bad_flag[] = {"irsim", "--frobnicate"};
    CHECK(main_entry(2, bad_flag) == 2);
    const char* bad_scheme[] = {"irsim", "--scheme", "quantum"};
    CHECK(main_entry(3, bad_scheme) == 2);
    const char* relay_strategy[] = {"irsim", "--scheme", "relay",
                                    "--strategy", "coherent", "--trials", "10"};
    CHECK(main_entry(7, relay_strategy) == 2);
    const char* help[] = {"irsim", "--help"};
    CHECK(main_entry(2, help) == 0);
}

TEST_CASE("cli entry: sweep writes the CSV file it promised") {
    const char* path = "run_test_sweep_out.csv";
    const char* argv[] = {"irsim",   "--scheme", "relay", "--power-start",
                          "30",      "--power-stop", "32", "--power-step",
                          "2",       "--trials", "1000",  "--seed", "5",
                          "--threads", "1",      "--out", path};
    CHECK(main_entry(17, argv) == 0);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    in.close();
    std::remove(path);
    const std::string csv = ss.str();
    CHECK(csv.rfind("curve,", 0) == 0);
    CHECK(csv.find("relay_u1_sim") != std::string::npos);
    CHECK(csv.find("relay_u1_exact") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);  // LF endings only
}

}  // TEST_SUITE
