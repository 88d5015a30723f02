#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

namespace wpcn {

double db_to_linear(double db);
double linear_to_db(double linear);

/// Scalar parameters of one transmission block. All quantities are linear SI
/// units; dB values only appear in the config file and are converted on load.
/// Slot duration is 1, so powers and per-slot energies are interchangeable.
struct SystemConfig {
    std::size_t num_slots = 61;          // K
    std::size_t num_subchannels = 16;    // N
    double eap_avg_power = 0.06;         // Q [W]
    double initial_battery = 0.0;        // B1 [J]
    double efficiency = 0.2;             // zeta
    double snr_gap = 7.943282347242815;  // Gamma (9 dB), linear
    double noise_per_sc = 1.5924286822e-14;  // sigma^2 [W], -174 dBm/Hz over 4 MHz
    double sc_bandwidth = 4e6;           // [Hz]
    double carrier_freq = 900e6;         // [Hz]
    double dist_eap_user = 3.0;          // [m]
    double dist_user_dap = 7.0;          // [m]
    double pathloss_exponent = 3.0;
    double rms_delay_spread = 0.02e-6;   // [s]
    std::size_t num_taps = 8;

    /// Gamma * sigma^2, the noise term of every rate expression.
    double noise_floor() const noexcept { return snr_gap * noise_per_sc; }

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
};

/// Parameters of the separated EAP/DAP reference setup (K=61, N=16, 4 MHz SCs, 3 m / 7 m).
SystemConfig reference_config();

/// Reads a JSON config. Missing keys keep their reference value; unknown keys are errors.
///
/// Recognized keys: num_slots, num_subchannels, eap_avg_power_mw, initial_battery_j,
/// efficiency, snr_gap_db, noise_density_dbm_per_hz, sc_bandwidth_hz, carrier_freq_hz,
/// dist_eap_user_m, dist_user_dap_m, pathloss_exponent, rms_delay_spread_s, num_taps.
SystemConfig load_config(const std::filesystem::path& path);
SystemConfig parse_config(const std::string& json_text);

}  // namespace wpcn
