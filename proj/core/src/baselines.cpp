#include "wpcn/baselines.hpp"

#include <stdexcept>

#include "wpcn/rng.hpp"
#include "wpcn/waterfill.hpp"

namespace wpcn {

namespace {

// User side of both baselines: staircase water-filling over the SCs not used for WET.
BaselineRun spend_arrivals(const ChannelBlock& channels, const SystemConfig& config, std::vector<int> wet_sc,
                           std::vector<double> q, ArrivalSource source) {
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;

    BaselineRun run;
    run.profile.source = source;
    run.profile.arrivals.resize(K);
    for (std::size_t k = 0; k < K; ++k)
        run.profile.arrivals[k] =
            wet_sc[k] == kNoWet ? 0.0 : config.efficiency * channels.h(k, static_cast<std::size_t>(wet_sc[k] - 1)) * q[k];

    // Energy harvested in slot k is spendable from slot k+1; the last slot's harvest is lost.
    std::vector<double> available(K);
    available[0] = config.initial_battery;
    for (std::size_t k = 1; k < K; ++k) available[k] = run.profile.arrivals[k - 1];

    std::vector<std::vector<double>> gains(K);
    std::vector<std::vector<std::size_t>> columns(K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n) {
            if (wet_sc[k] != kNoWet && static_cast<std::size_t>(wet_sc[k] - 1) == n) continue;
            gains[k].push_back(channels.g(k, n));
            columns[k].push_back(n);
        }

    const StaircaseResult swf = staircase_waterfill(available, gains, config.noise_floor());
    run.schedule = {std::move(q), Matrix(K, N), 0.0};
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < columns[k].size(); ++i) run.schedule.p(k, columns[k][i]) = swf.powers[k][i];
    run.schedule.rate = achievable_rate(run.schedule.p, channels.g, config);
    run.wet_sc = std::move(wet_sc);
    return run;
}

}  // namespace

BaselineRun random_arrival_baseline(const ChannelBlock& channels, const SystemConfig& config, std::uint64_t seed) {
    config.validate();
    validate_channels(channels, config);
    if (config.num_subchannels < 2)
        throw std::invalid_argument("random_arrival_baseline: needs N >= 2 (SC 1 is taken by the ambient source)");
    const std::size_t K = config.num_slots;

    RandomStream rng(stream_seed(seed, Stream::kArrivals));
    std::vector<double> q(K);
    double total = 0.0;
    for (auto& u : q) {
        u = rng.uniform();
        total += u;
    }
    const double target = static_cast<double>(K) * config.eap_avg_power;
    for (auto& u : q) u = total > 0.0 ? u * target / total : target / static_cast<double>(K);

    return spend_arrivals(channels, config, std::vector<int>(K, 1), std::move(q), ArrivalSource::kRandomAmbient);
}

double random_arrival_run(const ChannelBlock& channels, const SystemConfig& config, std::uint64_t seed) {
    return random_arrival_baseline(channels, config, seed).schedule.rate;
}

BaselineRun constant_wet_baseline(const ChannelBlock& channels, const SystemConfig& config, ScMode mode) {
    config.validate();
    validate_channels(channels, config);
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;

    std::vector<double> q(K, static_cast<double>(K) * config.eap_avg_power / static_cast<double>(K - 1));
    q.back() = 0.0;

    auto run_with = [&](std::vector<int> wet_sc) {
        wet_sc.back() = kNoWet;
        return spend_arrivals(channels, config, std::move(wet_sc), q, ArrivalSource::kConstantWet);
    };

    if (mode == ScMode::kDynamic) return run_with(best_sc_per_slot(channels.h));

    BaselineRun best = run_with(std::vector<int>(K, 1));
    for (std::size_t n = 2; n <= N; ++n) {
        BaselineRun candidate = run_with(std::vector<int>(K, static_cast<int>(n)));
        if (candidate.schedule.rate > best.schedule.rate) best = std::move(candidate);
    }
    return best;
}

double constant_wet_run(const ChannelBlock& channels, const SystemConfig& config, ScMode mode) {
    return constant_wet_baseline(channels, config, mode).schedule.rate;
}

}  // namespace wpcn
