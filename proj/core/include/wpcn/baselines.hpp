#pragma once

#include <cstdint>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/offline.hpp"

namespace wpcn {

enum class ArrivalSource { kRandomAmbient, kConstantWet };

/// Energy harvested during each slot; arrivals[k] is usable from slot k+1 on.
struct ArrivalProfile {
    std::vector<double> arrivals;
    ArrivalSource source = ArrivalSource::kConstantWet;
};

struct BaselineRun {
    ArrivalProfile profile;
    std::vector<int> wet_sc;  // SC the energy arrives on, per slot
    PowerSchedule schedule;
};

/// Ambient transmitter on SC 1 with uniform random powers normalized to average Q;
/// the user water-fills SCs 2..N under energy causality. Requires N >= 2.
BaselineRun random_arrival_baseline(const ChannelBlock& channels, const SystemConfig& config, std::uint64_t seed);
double random_arrival_run(const ChannelBlock& channels, const SystemConfig& config, std::uint64_t seed);

enum class ScMode { kDynamic, kStatic };

/// EAP sends K*Q/(K-1) on every slot but the last, on the per-slot best SC
/// (dynamic) or on the single SC that maximizes the resulting rate (static).
BaselineRun constant_wet_baseline(const ChannelBlock& channels, const SystemConfig& config, ScMode mode);
double constant_wet_run(const ChannelBlock& channels, const SystemConfig& config, ScMode mode);

}  // namespace wpcn
