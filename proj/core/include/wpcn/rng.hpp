#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace wpcn {

/// SplitMix64 finalizer; used to spread nearby seeds before seeding the engine.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-realization seed. Realization r of a run with master seed s uses s ^ r,
/// so results do not depend on evaluation order.
constexpr std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return master ^ index;
}

/// Independent named sub-stream of a seed (channels, arrival draws, ...).
enum class Stream : std::uint64_t { kChannel = 0, kArrivals = 1, kOracle = 2 };

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream) noexcept {
    return mix_seed(seed ^ (static_cast<std::uint64_t>(stream) << 56));
}

/// mt19937_64 with portable uniform/normal draws (no implementation-defined distributions).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace wpcn
