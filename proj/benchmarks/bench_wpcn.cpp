#include <benchmark/benchmark.h>

#include <vector>

#include "wpcn/baselines.hpp"
#include "wpcn/channel.hpp"
#include "wpcn/offline.hpp"
#include "wpcn/online.hpp"
#include "wpcn/rng.hpp"
#include "wpcn/waterfill.hpp"

namespace {

using namespace wpcn;

const SystemConfig& config() {
    static const SystemConfig c = reference_config();
    return c;
}

const ChannelBlock& channels() {
    static const ChannelBlock b = generate_channel(config(), 1);
    return b;
}

void BM_Waterfill(benchmark::State& state) {
    RandomStream rng(1);
    std::vector<double> gains(static_cast<std::size_t>(state.range(0)));
    for (auto& g : gains) g = 0.01 + rng.uniform();
    for (auto _ : state) benchmark::DoNotOptimize(waterfill(gains, 1.0, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Waterfill)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Staircase(benchmark::State& state) {
    const std::size_t K = static_cast<std::size_t>(state.range(0));
    RandomStream rng(2);
    std::vector<double> arrivals(K);
    std::vector<std::vector<double>> gains(K, std::vector<double>(15));
    for (std::size_t k = 0; k < K; ++k) {
        arrivals[k] = rng.uniform();
        for (auto& g : gains[k]) g = 0.01 + rng.uniform();
    }
    for (auto _ : state) benchmark::DoNotOptimize(staircase_waterfill(arrivals, gains, 0.1));
}
BENCHMARK(BM_Staircase)->Arg(16)->Arg(61)->Arg(241);

void BM_GenerateChannel(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_channel(config(), seed++));
}
BENCHMARK(BM_GenerateChannel);

void BM_DynamicJoint(benchmark::State& state) {
    const ScAllocation sc = dynamic_sc_allocation(channels().h);
    for (auto _ : state) benchmark::DoNotOptimize(joint_power_allocation(sc, channels(), config()));
}
BENCHMARK(BM_DynamicJoint);

void BM_StaticSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(static_sc_search(channels(), config()));
}
BENCHMARK(BM_StaticSearch);

void BM_ConstantWetStatic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(constant_wet_run(channels(), config(), ScMode::kStatic));
}
BENCHMARK(BM_ConstantWetStatic);

void BM_OnlineOtt(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_online(channels(), config(), L, OnlineVariant::kOttDynamic));
}
BENCHMARK(BM_OnlineOtt)->Arg(1)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
