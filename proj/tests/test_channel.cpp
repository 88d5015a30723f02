#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/rng.hpp"

using namespace wpcn;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// 10^4 slot draws of the WET link at the reference parameters, one vector per SC.
std::vector<std::vector<double>> sc_samples() {
    SystemConfig cfg = reference_config();
    cfg.num_slots = 100;
    std::vector<std::vector<double>> per_sc(cfg.num_subchannels);
    for (std::uint64_t s = 0; s < 100; ++s) {
        const ChannelBlock b = generate_channel(cfg, 1000 + s);
        for (std::size_t k = 0; k < cfg.num_slots; ++k)
            for (std::size_t n = 0; n < cfg.num_subchannels; ++n) per_sc[n].push_back(b.h(k, n));
    }
    return per_sc;
}

// Mean correlation between SCs n and n + delta, averaged over n.
double lag_correlation(const std::vector<std::vector<double>>& per_sc, std::size_t delta) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 0; n + delta < per_sc.size(); ++n, ++count) sum += correlation(per_sc[n], per_sc[n + delta]);
    return sum / static_cast<double>(count);
}

}  // namespace

TEST_CASE("pathloss follows the log-distance law", "[channel]") {
    CHECK_THAT(pathloss_linear(1.0), WithinRel(7.0794578438e-4, 1e-9));
    CHECK_THAT(pathloss_linear(10.0), WithinRel(7.0794578438e-7, 1e-9));
    CHECK_THAT(pathloss_linear(3.0), WithinRel(2.6220214236e-5, 1e-9));
    CHECK_THAT(linear_to_db(pathloss_linear(3.0)), WithinRel(-45.81363, 1e-6));
    CHECK_THROWS_AS(pathloss_linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(pathloss_linear(-2.0), std::invalid_argument);
}

TEST_CASE("noise power per sub-channel", "[channel]") {
    CHECK_THAT(noise_per_sc(-174.0, 1.0), WithinRel(3.9810717055e-21, 1e-9));
    CHECK_THAT(noise_per_sc(-174.0, 4e6), WithinRel(1.5924286822e-14, 1e-9));
    CHECK_THAT(noise_per_sc(0.0, 1.0), WithinRel(1e-3, 1e-12));
    CHECK_THROWS_AS(noise_per_sc(-174.0, 0.0), std::invalid_argument);
}

TEST_CASE("reference configuration", "[channel][config]") {
    const SystemConfig c = reference_config();
    CHECK(c.num_slots == 61);
    CHECK(c.num_subchannels == 16);
    CHECK_THAT(c.snr_gap, WithinRel(7.943282347242815, 1e-12));
    CHECK_THAT(c.noise_per_sc, WithinRel(1.5924286822e-14, 1e-9));
    CHECK_THAT(c.noise_floor(), WithinRel(c.snr_gap * c.noise_per_sc, 1e-15));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("generation is deterministic and seed sensitive", "[channel]") {
    const SystemConfig cfg = reference_config();
    const ChannelBlock a = generate_channel(cfg, 42);
    const ChannelBlock b = generate_channel(cfg, 42);
    const ChannelBlock c = generate_channel(cfg, 43);
    CHECK(a == b);
    CHECK_FALSE(a.h == c.h);
    CHECK_FALSE(a.g == c.g);
    CHECK(a.num_slots() == cfg.num_slots);
    CHECK(a.num_subchannels() == cfg.num_subchannels);
    CHECK_NOTHROW(validate_channels(a, cfg));
    // The two links are drawn independently.
    CHECK_FALSE(a.h == a.g);
}

TEST_CASE("a single tap gives flat fading", "[channel]") {
    SystemConfig cfg = reference_config();
    cfg.num_taps = 1;
    const ChannelBlock b = generate_channel(cfg, 7);
    for (std::size_t k = 0; k < cfg.num_slots; ++k)
        for (std::size_t n = 1; n < cfg.num_subchannels; ++n) {
            CHECK_THAT(b.h(k, n), WithinRel(b.h(k, 0), 1e-12));
            CHECK_THAT(b.g(k, n), WithinRel(b.g(k, 0), 1e-12));
        }
}

TEST_CASE("mean sub-channel gain equals the pathloss", "[channel][statistics]") {
    SystemConfig cfg = reference_config();
    cfg.num_slots = 100;
    const double pl_h = pathloss_linear(cfg.dist_eap_user);
    const double pl_g = pathloss_linear(cfg.dist_user_dap);
    double sum_h = 0.0, sum_g = 0.0;
    std::size_t slots = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const ChannelBlock b = generate_channel(cfg, s);
        for (std::size_t k = 0; k < cfg.num_slots; ++k, ++slots) {
            double row_h = 0.0, row_g = 0.0;
            for (std::size_t n = 0; n < cfg.num_subchannels; ++n) {
                row_h += b.h(k, n);
                row_g += b.g(k, n);
            }
            sum_h += row_h / static_cast<double>(cfg.num_subchannels);
            sum_g += row_g / static_cast<double>(cfg.num_subchannels);
        }
    }
    REQUIRE(slots == 10000);
    CHECK_THAT(sum_h / static_cast<double>(slots), WithinRel(pl_h, 0.02));
    CHECK_THAT(sum_g / static_cast<double>(slots), WithinRel(pl_g, 0.02));
}

TEST_CASE("frequency correlation matches the delay spread", "[channel][statistics]") {
    const auto per_sc = sc_samples();
    const SystemConfig cfg = reference_config();
    // Adjacent SCs are 4 MHz apart, well inside the ~8 MHz coherence bandwidth.
    CHECK(lag_correlation(per_sc, 1) > 0.5);
    // Four SCs = 16 MHz >= 2 B_c.
    for (std::size_t delta = 4; delta <= 8; ++delta) CHECK(lag_correlation(per_sc, delta) < 0.3);

    // Bandwidth at which the correlation crosses 1/2, by linear interpolation between lags.
    double prev = 1.0;
    double crossing = 0.0;
    for (std::size_t delta = 1; delta < per_sc.size(); ++delta) {
        const double c = lag_correlation(per_sc, delta);
        if (c < 0.5) {
            crossing = static_cast<double>(delta - 1) + (prev - 0.5) / (prev - c);
            break;
        }
        prev = c;
    }
    const double coherence_bw = crossing * cfg.sc_bandwidth;
    const double nominal = 1.0 / (2.0 * 3.141592653589793 * cfg.rms_delay_spread);
    INFO("empirical coherence bandwidth " << coherence_bw / 1e6 << " MHz");
    CHECK_THAT(coherence_bw, WithinRel(nominal, 0.25));
}

TEST_CASE("validate_channels rejects bad blocks", "[channel]") {
    SystemConfig cfg = reference_config();
    cfg.num_slots = 3;
    cfg.num_subchannels = 2;
    ChannelBlock b = generate_channel(cfg, 1);
    CHECK_NOTHROW(validate_channels(b, cfg));
    ChannelBlock zero = b;
    zero.g(1, 1) = 0.0;
    CHECK_THROWS_AS(validate_channels(zero, cfg), std::invalid_argument);
    ChannelBlock nan = b;
    nan.h(0, 0) = std::nan("");
    CHECK_THROWS_AS(validate_channels(nan, cfg), std::invalid_argument);
    cfg.num_subchannels = 3;
    CHECK_THROWS_AS(validate_channels(b, cfg), std::invalid_argument);
}

TEST_CASE("RNG streams", "[rng]") {
    CHECK(realization_seed(10, 3) == (10u ^ 3u));
    CHECK(stream_seed(5, Stream::kChannel) != stream_seed(5, Stream::kArrivals));
    RandomStream a(9), b(9);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    RandomStream r(11);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK_THAT(sq / n, WithinRel(1.0, 0.02));
}

TEST_CASE("config parsing", "[config]") {
    SECTION("empty object keeps the reference values") {
        const SystemConfig c = parse_config("{}");
        const SystemConfig r = reference_config();
        CHECK(c.num_slots == r.num_slots);
        CHECK(c.noise_per_sc == r.noise_per_sc);
        CHECK(c.snr_gap == r.snr_gap);
    }
    SECTION("units are converted at the boundary") {
        const SystemConfig c = parse_config(R"({"num_slots": 16, "eap_avg_power_mw": 40, "snr_gap_db": 0,
                                               "noise_density_dbm_per_hz": 0, "sc_bandwidth_hz": 1})");
        CHECK(c.num_slots == 16);
        CHECK_THAT(c.eap_avg_power, WithinRel(0.04, 1e-12));
        CHECK_THAT(c.snr_gap, WithinRel(1.0, 1e-12));
        CHECK_THAT(c.noise_per_sc, WithinRel(1e-3, 1e-12));
    }
    SECTION("bandwidth override recomputes the noise") {
        const SystemConfig c = parse_config(R"({"sc_bandwidth_hz": 1})");
        CHECK_THAT(c.noise_per_sc, WithinRel(3.9810717055e-21, 1e-9));
    }
    SECTION("errors name the offending field") {
        CHECK_THROWS_WITH(parse_config(R"({"num_slot": 3})"), ContainsSubstring("num_slot"));
        CHECK_THROWS_WITH(parse_config(R"({"num_slots": 1})"), ContainsSubstring("num_slots"));
        CHECK_THROWS_WITH(parse_config(R"({"efficiency": 1.5})"), ContainsSubstring("efficiency"));
        CHECK_THROWS_WITH(parse_config(R"({"num_taps": 2.5})"), ContainsSubstring("num_taps"));
        CHECK_THROWS_WITH(parse_config(R"({"dist_eap_user_m": "far"})"), ContainsSubstring("dist_eap_user_m"));
        CHECK_THROWS_AS(parse_config("{not json"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config("[1, 2]"), std::invalid_argument);
    }
    SECTION("files") {
        const auto path = std::filesystem::temp_directory_path() / "wpcn_test_config.json";
        {
            std::ofstream out(path);
            out << R"({"num_subchannels": 4, "initial_battery_j": 0.5})";
        }
        const SystemConfig c = load_config(path);
        CHECK(c.num_subchannels == 4);
        CHECK(c.initial_battery == 0.5);
        std::filesystem::remove(path);
        CHECK_THROWS_WITH(load_config(path), ContainsSubstring(path.string()));
    }
}
