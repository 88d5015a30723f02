#include "wpcn/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpcn/rng.hpp"

namespace wpcn {

namespace {

constexpr double kMinGain = 1e-30;

class LinkSampler {
public:
    LinkSampler(const SystemConfig& config, double pathloss) : n_sc_(config.num_subchannels) {
        const std::size_t taps = config.num_taps;
        const double tap_spacing = 1.0 / (static_cast<double>(n_sc_) * config.sc_bandwidth);
        std::vector<double> profile(taps);
        double total = 0.0;
        for (std::size_t l = 0; l < taps; ++l) {
            profile[l] = std::exp(-static_cast<double>(l) * tap_spacing / config.rms_delay_spread);
            total += profile[l];
        }
        // Each complex tap has E|c|^2 = v_l; real and imaginary parts carry v_l / 2 each.
        tap_sigma_.resize(taps);
        for (std::size_t l = 0; l < taps; ++l) tap_sigma_[l] = std::sqrt(0.5 * pathloss * profile[l] / total);

        twiddle_.resize(n_sc_ * taps);
        for (std::size_t n = 0; n < n_sc_; ++n)
            for (std::size_t l = 0; l < taps; ++l) {
                const double phase = -2.0 * std::numbers::pi * static_cast<double>((n * l) % n_sc_) /
                                     static_cast<double>(n_sc_);
                twiddle_[n * taps + l] = std::polar(1.0, phase);
            }
        taps_.resize(taps);
    }

    void sample(RandomStream& rng, std::span<double> out) {
        const std::size_t taps = taps_.size();
        for (std::size_t l = 0; l < taps; ++l) {
            const double re = rng.normal();
            const double im = rng.normal();
            taps_[l] = {tap_sigma_[l] * re, tap_sigma_[l] * im};
        }
        for (std::size_t n = 0; n < n_sc_; ++n) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t l = 0; l < taps; ++l) acc += taps_[l] * twiddle_[n * taps + l];
            const double gain = std::norm(acc);
            out[n] = gain > kMinGain ? gain : kMinGain;
        }
    }

private:
    std::size_t n_sc_;
    std::vector<double> tap_sigma_;
    std::vector<std::complex<double>> twiddle_;
    std::vector<std::complex<double>> taps_;
};

}  // namespace

double pathloss_linear(double distance_m, double exponent) {
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("pathloss_linear: distance must be positive");
    return std::pow(10.0, (-31.5 - 10.0 * exponent * std::log10(distance_m)) / 10.0);
}

double noise_per_sc(double density_dbm_per_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("noise_per_sc: bandwidth must be positive");
    return std::pow(10.0, (density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz)) / 10.0) / 1000.0;
}

ChannelBlock generate_channel(const SystemConfig& config, std::uint64_t seed) {
    config.validate();
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;

    LinkSampler wet(config, pathloss_linear(config.dist_eap_user, config.pathloss_exponent));
    LinkSampler wit(config, pathloss_linear(config.dist_user_dap, config.pathloss_exponent));
    RandomStream rng(stream_seed(seed, Stream::kChannel));

    ChannelBlock block{Matrix(K, N), Matrix(K, N), seed};
    for (std::size_t k = 0; k < K; ++k) {
        wet.sample(rng, block.h.row(k));
        wit.sample(rng, block.g.row(k));
    }
    return block;
}

void validate_channels(const ChannelBlock& channels, const SystemConfig& config) {
    const auto check = [&](const Matrix& m, const char* name) {
        if (m.rows() != config.num_slots || m.cols() != config.num_subchannels)
            throw std::invalid_argument(std::string("channels.") + name + ": expected " +
                                        std::to_string(config.num_slots) + "x" +
                                        std::to_string(config.num_subchannels));
        for (double v : m.data())
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("channels.") + name + ": gains must be positive and finite");
    };
    check(channels.h, "h");
    check(channels.g, "g");
}

}  // namespace wpcn
