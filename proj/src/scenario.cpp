#include "irsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace irsim {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok)
        throw std::invalid_argument(std::string("ScenarioConfig.") + field +
                                    ": " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
    require(std::isfinite(d2) && d2 > 0.0, "d2", "must be > 0");
    require(std::isfinite(dr) && dr > 0.0, "dr", "must be > 0");
    require(std::isfinite(dr1) && dr1 > 0.0, "dr1", "must be > 0");
    require(std::isfinite(dr2) && dr2 > 0.0, "dr2", "must be > 0");
    require(std::isfinite(d12) && d12 > 0.0, "d12", "must be > 0");
    require(std::isfinite(alpha) && alpha >= 2.0, "alpha", "must be >= 2");
    require(std::isfinite(c1_sq) && std::isfinite(c2_sq), "c1_sq",
            "must be finite");
    require(c2_sq > 0.0, "c2_sq", "must be > 0");
    require(c1_sq >= c2_sq, "c1_sq", "must be >= c2_sq");
    require(std::abs(c1_sq + c2_sq - 1.0) <= 1e-12, "c1_sq",
            "c1_sq + c2_sq must equal 1");
    require(std::isfinite(R1) && R1 > 0.0, "R1", "must be > 0");
    require(std::isfinite(R2) && R2 > 0.0, "R2", "must be > 0");
    require(N >= 1, "N", "must be >= 1");
    require(Q >= 1, "Q", "must be >= 1");
    require(std::isfinite(tx_power_dbm), "tx_power_dbm", "must be finite");
    require(std::isfinite(noise_power_dbm), "noise_power_dbm",
            "must be finite");
}

double dbm_to_linear(double dbm) {
    return std::pow(10.0, dbm / 10.0);
}

DerivedThresholds derive_thresholds(const ScenarioConfig& cfg) {
    cfg.validate();
    DerivedThresholds t;
    t.snr_linear =
        dbm_to_linear(cfg.tx_power_dbm) / dbm_to_linear(cfg.noise_power_dbm);
    t.eps = std::exp2(cfg.R1) - 1.0;
    const double loss = std::pow(cfg.dr, cfg.alpha) * std::pow(cfg.dr1, cfg.alpha);
    t.eps2 = loss * (std::exp2(2.0 * cfg.R1) - 1.0) / t.snr_linear;
    const double split = cfg.c1_sq - t.eps * cfg.c2_sq;
    t.feasible = split > 0.0;
    t.eps1 = t.feasible ? loss * t.eps / (t.snr_linear * split)
                        : std::numeric_limits<double>::infinity();
    return t;
}

ScenarioConfig default_scenario() {
    return ScenarioConfig{};
}

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("config key '") + key +
                                    "' has the wrong type");
    }
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") +
                                    e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("config must be a flat JSON object");

    static const char* kKnown[] = {
        "d2", "dr", "dr1", "dr2", "d12", "alpha", "c1_sq", "c2_sq",
        "R1", "R2", "N", "Q", "tx_power_dbm", "noise_power_dbm"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known)
            throw std::invalid_argument("unknown config key '" + key + "'");
    }

    ScenarioConfig cfg = default_scenario();
    read_field(j, "d2", cfg.d2);
    read_field(j, "dr", cfg.dr);
    read_field(j, "dr1", cfg.dr1);
    read_field(j, "dr2", cfg.dr2);
    read_field(j, "d12", cfg.d12);
    read_field(j, "alpha", cfg.alpha);
    read_field(j, "c1_sq", cfg.c1_sq);
    read_field(j, "c2_sq", cfg.c2_sq);
    read_field(j, "R1", cfg.R1);
    read_field(j, "R2", cfg.R2);
    read_field(j, "N", cfg.N);
    read_field(j, "Q", cfg.Q);
    read_field(j, "tx_power_dbm", cfg.tx_power_dbm);
    read_field(j, "noise_power_dbm", cfg.noise_power_dbm);
    cfg.validate();
    return cfg;
}

std::string config_to_json_text(const ScenarioConfig& cfg) {
    json j;
    j["d2"] = cfg.d2;
    j["dr"] = cfg.dr;
    j["dr1"] = cfg.dr1;
    j["dr2"] = cfg.dr2;
    j["d12"] = cfg.d12;
    j["alpha"] = cfg.alpha;
    j["c1_sq"] = cfg.c1_sq;
    j["c2_sq"] = cfg.c2_sq;
    j["R1"] = cfg.R1;
    j["R2"] = cfg.R2;
    j["N"] = cfg.N;
    j["Q"] = cfg.Q;
    j["tx_power_dbm"] = cfg.tx_power_dbm;
    j["noise_power_dbm"] = cfg.noise_power_dbm;
    return j.dump(2) + "\n";
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

void save_config(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot write config file '" + path + "'");
    out << config_to_json_text(cfg);
}

}  // namespace irsim
