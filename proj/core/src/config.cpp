#include "wpcn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wpcn/channel.hpp"

namespace wpcn {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) throw std::invalid_argument("linear_to_db: value must be positive");
    return 10.0 * std::log10(linear);
}

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SystemConfig.") + field + ": " + what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void SystemConfig::validate() const {
    require(num_slots >= 2, "num_slots", "must be >= 2");
    require(num_subchannels >= 1, "num_subchannels", "must be >= 1");
    require(std::isfinite(eap_avg_power) && eap_avg_power >= 0.0, "eap_avg_power", "must be >= 0");
    require(std::isfinite(initial_battery) && initial_battery >= 0.0, "initial_battery", "must be >= 0");
    require(efficiency > 0.0 && efficiency <= 1.0, "efficiency", "must lie in (0, 1]");
    require(std::isfinite(snr_gap) && snr_gap >= 1.0, "snr_gap", "must be >= 1 (linear)");
    require(positive_finite(noise_per_sc), "noise_per_sc", "must be > 0");
    require(positive_finite(sc_bandwidth), "sc_bandwidth", "must be > 0");
    require(positive_finite(carrier_freq), "carrier_freq", "must be > 0");
    require(positive_finite(dist_eap_user), "dist_eap_user", "must be > 0");
    require(positive_finite(dist_user_dap), "dist_user_dap", "must be > 0");
    require(positive_finite(pathloss_exponent), "pathloss_exponent", "must be > 0");
    require(positive_finite(rms_delay_spread), "rms_delay_spread", "must be > 0");
    require(num_taps >= 1, "num_taps", "must be >= 1");
}

SystemConfig reference_config() {
    SystemConfig c;
    c.snr_gap = db_to_linear(9.0);
    c.noise_per_sc = noise_per_sc(-174.0, c.sc_bandwidth);
    return c;
}

SystemConfig parse_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

    SystemConfig c = reference_config();
    double noise_density_dbm = -174.0;
    bool noise_given = false;

    for (const auto& [key, value] : doc.items()) {
        auto number = [&]() {
            if (!value.is_number()) throw std::invalid_argument("config: '" + key + "' must be a number");
            return value.get<double>();
        };
        auto count = [&]() -> std::size_t {
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw std::invalid_argument("config: '" + key + "' must be a non-negative integer");
            return value.get<std::size_t>();
        };
        if (key == "num_slots") c.num_slots = count();
        else if (key == "num_subchannels") c.num_subchannels = count();
        else if (key == "eap_avg_power_mw") c.eap_avg_power = number() * 1e-3;
        else if (key == "initial_battery_j") c.initial_battery = number();
        else if (key == "efficiency") c.efficiency = number();
        else if (key == "snr_gap_db") c.snr_gap = db_to_linear(number());
        else if (key == "noise_density_dbm_per_hz") { noise_density_dbm = number(); noise_given = true; }
        else if (key == "sc_bandwidth_hz") c.sc_bandwidth = number();
        else if (key == "carrier_freq_hz") c.carrier_freq = number();
        else if (key == "dist_eap_user_m") c.dist_eap_user = number();
        else if (key == "dist_user_dap_m") c.dist_user_dap = number();
        else if (key == "pathloss_exponent") c.pathloss_exponent = number();
        else if (key == "rms_delay_spread_s") c.rms_delay_spread = number();
        else if (key == "num_taps") c.num_taps = count();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    // Noise depends on the SC bandwidth, which may have been overridden.
    if (noise_given || doc.contains("sc_bandwidth_hz")) {
        if (!(c.sc_bandwidth > 0.0)) throw std::invalid_argument("SystemConfig.sc_bandwidth: must be > 0");
        c.noise_per_sc = noise_per_sc(noise_density_dbm, c.sc_bandwidth);
    }
    c.validate();
    return c;
}

SystemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

}  // namespace wpcn
