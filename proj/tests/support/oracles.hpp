#pragma once

// Test-only reference computations. Nothing here calls the joint power
// allocation or the online scheduler; they are the independent side of the checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/offline.hpp"
#include "wpcn/online.hpp"
#include "wpcn/rng.hpp"
#include "wpcn/waterfill.hpp"

namespace wpcn::testing {

/// Small well-conditioned configuration: Gamma * sigma^2 = 1, unit-scale energies.
inline SystemConfig unit_config(std::size_t K, std::size_t N) {
    SystemConfig c = reference_config();
    c.num_slots = K;
    c.num_subchannels = N;
    c.snr_gap = 1.0;
    c.noise_per_sc = 1.0;
    c.efficiency = 1.0;
    c.eap_avg_power = 1.0;
    c.initial_battery = 0.0;
    return c;
}

struct Instance {
    SystemConfig config;
    ChannelBlock channels;
};

/// Random unit-scale instance. Roughly half of the draws have B1 = 0.
inline Instance random_instance(std::size_t K, std::size_t N, std::uint64_t seed, bool allow_battery = true) {
    RandomStream rng(stream_seed(seed, Stream::kOracle));
    Instance inst{unit_config(K, N), {Matrix(K, N), Matrix(K, N), seed}};
    inst.config.efficiency = 0.2 + 0.8 * rng.uniform();
    inst.config.eap_avg_power = 0.1 + 1.9 * rng.uniform();
    inst.config.initial_battery = (allow_battery && rng.uniform() < 0.5) ? 2.0 * rng.uniform() : 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n) {
            inst.channels.h(k, n) = 0.2 + 1.8 * rng.uniform();
            inst.channels.g(k, n) = 0.2 + 1.8 * rng.uniform();
        }
    return inst;
}

/// Rate of a given WET schedule q on allocation pi, with the user's powers
/// chosen optimally under energy causality (staircase water-filling).
inline double rate_given_wet(const ChannelBlock& ch, const SystemConfig& cfg, const std::vector<int>& pi,
                             const std::vector<double>& q) {
    const std::size_t K = cfg.num_slots;
    const std::size_t N = cfg.num_subchannels;
    std::vector<double> available(K, 0.0);
    available[0] = cfg.initial_battery;
    for (std::size_t k = 1; k < K; ++k)
        if (pi[k - 1] != kNoWet)
            available[k] = cfg.efficiency * ch.h(k - 1, static_cast<std::size_t>(pi[k - 1] - 1)) * q[k - 1];
    std::vector<std::vector<double>> gains(K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n)
            if (pi[k] == kNoWet || static_cast<std::size_t>(pi[k] - 1) != n) gains[k].push_back(ch.g(k, n));
    const StaircaseResult swf = staircase_waterfill(available, gains, cfg.noise_floor());
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < gains[k].size(); ++i)
            total += std::log2(1.0 + gains[k][i] * swf.powers[k][i] / cfg.noise_floor());
    return total / static_cast<double>(K * N);
}

/// Brute-force maximum of the fixed-allocation problem: the whole EAP budget K*Q
/// is split over the WET-capable slots on a simplex grid of resolution `step`
/// (fraction of the budget), and each split is scored by rate_given_wet. With
/// three or more WET slots the grid is searched coarse-to-fine, which is exact
/// up to the grid resolution because the optimal rate is concave in the split.
inline double brute_force_rate(const ChannelBlock& ch, const SystemConfig& cfg, const std::vector<int>& pi,
                               double step = 1e-3) {
    const std::size_t K = cfg.num_slots;
    std::vector<std::size_t> wet_slots;
    for (std::size_t k = 0; k + 1 < K; ++k)
        if (pi[k] != kNoWet) wet_slots.push_back(k);
    const double budget = static_cast<double>(K) * cfg.eap_avg_power;
    std::vector<double> q(K, 0.0);
    if (wet_slots.empty() || budget == 0.0) return rate_given_wet(ch, cfg, pi, q);

    const std::size_t dims = wet_slots.size();
    auto score = [&](const std::vector<double>& frac) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t i = 0; i < dims; ++i) q[wet_slots[i]] = frac[i] * budget;
        return rate_given_wet(ch, cfg, pi, q);
    };

    // Enumerate frac[0..dims-2] on a grid inside a box, last coordinate takes the rest.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_frac(dims, 0.0);
    auto search = [&](double grid, const std::vector<double>& lo, const std::vector<double>& hi) {
        std::vector<double> frac(dims, 0.0);
        std::function<void(std::size_t, double)> rec = [&](std::size_t i, double used) {
            if (i + 1 == dims) {
                frac[i] = 1.0 - used;
                if (frac[i] < -1e-12) return;
                frac[i] = std::max(0.0, frac[i]);
                const double r = score(frac);
                if (r > best) {
                    best = r;
                    best_frac = frac;
                }
                return;
            }
            const long first = std::max(0L, static_cast<long>(std::ceil(lo[i] / grid - 1e-9)));
            const long last = static_cast<long>(std::floor(std::min(hi[i], 1.0 - used) / grid + 1e-9));
            for (long t = first; t <= last; ++t) {
                frac[i] = static_cast<double>(t) * grid;
                rec(i + 1, used + frac[i]);
            }
        };
        rec(0, 0.0);
    };

    if (dims <= 2) {
        search(step, std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
        return best;
    }
    const double coarse = 0.02;
    search(coarse, std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
    std::vector<double> lo(dims), hi(dims);
    for (std::size_t i = 0; i < dims; ++i) {
        lo[i] = std::max(0.0, best_frac[i] - 2 * coarse);
        hi[i] = std::min(1.0, best_frac[i] + 2 * coarse);
    }
    search(step, lo, hi);
    return best;
}

/// Fraction of windows in which the cutoff rule stops on the largest of L iid uniform draws.
inline double secretary_success_rate(std::size_t L, std::size_t cutoff, std::size_t trials, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> values(L);
    std::size_t wins = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& v : values) v = rng.uniform();
        CutoffStoppingRule rule(L, cutoff);
        std::size_t chosen = 0;
        for (std::size_t i = 0; i < L; ++i)
            if (rule.offer(values[i])) {
                chosen = i;
                break;
            }
        const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
        if (chosen == best) ++wins;
    }
    return static_cast<double>(wins) / static_cast<double>(trials);
}

inline double relative_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-12});
    return std::abs(a - b) / scale;
}

}  // namespace wpcn::testing
