#pragma once

#include <cstdint>

#include "wpcn/config.hpp"
#include "wpcn/matrix.hpp"

namespace wpcn {

/// One block of linear channel power gains. h is the EAP->user (energy) link,
/// g the user->DAP (information) link, both K x N and strictly positive.
struct ChannelBlock {
    Matrix h;
    Matrix g;
    std::uint64_t seed = 0;

    std::size_t num_slots() const noexcept { return h.rows(); }
    std::size_t num_subchannels() const noexcept { return h.cols(); }

    friend bool operator==(const ChannelBlock&, const ChannelBlock&) = default;
};

/// Large-scale attenuation at distance d metres: -31.5 - 10*exponent*log10(d) dB, as a linear gain.
double pathloss_linear(double distance_m, double exponent = 3.0);

/// Noise power in watts on one sub-channel for a given noise spectral density.
double noise_per_sc(double density_dbm_per_hz, double bandwidth_hz);

/// Draws one frequency-selective realization for both links.
///
/// Each slot and link gets num_taps independent Rayleigh taps at spacing
/// 1/(N * sc_bandwidth) with an exponential power-delay profile whose total
/// expected power equals the link pathloss. Sub-channel gains are the squared
/// magnitudes of the N-point DFT of the taps, so each SC has mean gain equal to
/// the pathloss. Slots are independent. Deterministic in (config, seed).
ChannelBlock generate_channel(const SystemConfig& config, std::uint64_t seed);

/// Checks dimensions against config and that every gain is positive and finite.
void validate_channels(const ChannelBlock& channels, const SystemConfig& config);

}  // namespace wpcn
