#include "wpcn/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wpcn {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxIterations = 200;

void check_budget(double budget) {
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw std::invalid_argument("waterfill: budget must be finite and >= 0");
}

void check_noise_floor(double noise_floor) {
    if (!(noise_floor > 0.0) || !std::isfinite(noise_floor))
        throw std::invalid_argument("waterfill: noise floor must be positive");
}

double allocated(std::span<const double> floors, double level) {
    double total = 0.0;
    for (double f : floors) total += f < level ? level - f : 0.0;
    return total;
}

}  // namespace

WfResult waterfill_floors(std::span<const double> floors, double budget) {
    check_budget(budget);
    if (floors.empty()) {
        if (budget > 0.0) throw InfeasibleError("waterfill: positive budget over an empty sub-channel set");
        return {};
    }
    double min_floor = std::numeric_limits<double>::infinity();
    double max_floor = 0.0;
    for (double f : floors) {
        if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("waterfill: gains must be positive and finite");
        min_floor = std::min(min_floor, f);
        max_floor = std::max(max_floor, f);
    }

    WfResult result;
    result.powers.assign(floors.size(), 0.0);
    if (budget == 0.0) {
        result.water_level = min_floor;
        return result;
    }

    double lo = 0.0;
    double hi = budget + max_floor;
    while (hi - lo > kRelTol * hi && result.iterations < kMaxIterations) {
        const double mid = 0.5 * (lo + hi);
        if (allocated(floors, mid) < budget) lo = mid;
        else hi = mid;
        ++result.iterations;
    }

    // Closed form on the active set found by bisection.
    double active_sum = 0.0;
    std::size_t active = 0;
    for (double f : floors)
        if (f < hi) {
            active_sum += f;
            ++active;
        }
    const double level = (budget + active_sum) / static_cast<double>(active);
    for (std::size_t i = 0; i < floors.size(); ++i) result.powers[i] = std::max(0.0, level - floors[i]);
    result.water_level = level;
    return result;
}

WfResult waterfill(std::span<const double> gains, double budget, double noise_floor) {
    check_noise_floor(noise_floor);
    std::vector<double> floors(gains.size());
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (!(gains[i] > 0.0)) throw std::invalid_argument("waterfill: gains must be positive");
        floors[i] = noise_floor / gains[i];
    }
    return waterfill_floors(floors, budget);
}

double sorted_water_level(std::span<const double> sorted_floors, double budget) {
    check_budget(budget);
    const std::size_t n = sorted_floors.size();
    if (n == 0) {
        if (budget > 0.0) throw InfeasibleError("sorted_water_level: positive budget over an empty set");
        return 0.0;
    }
    double prefix = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
        prefix += sorted_floors[m - 1];
        const double level = (budget + prefix) / static_cast<double>(m);
        if (m == n || level <= sorted_floors[m]) return level;
    }
    return sorted_floors.back();  // unreachable
}

StaircaseResult staircase_waterfill(std::span<const double> arrivals,
                                    const std::vector<std::vector<double>>& gains,
                                    double noise_floor) {
    check_noise_floor(noise_floor);
    const std::size_t K = arrivals.size();
    if (gains.size() != K) throw std::invalid_argument("staircase_waterfill: arrivals/gains slot count mismatch");

    StaircaseResult result;
    result.powers.resize(K);
    result.water_levels.assign(K, std::numeric_limits<double>::quiet_NaN());

    // Slots without sub-channels cannot spend; their arrivals move to the next
    // slot that can, since the causality constraint there is implied.
    std::vector<std::size_t> slots;
    std::vector<double> budget;
    std::vector<std::vector<double>> floors;
    double carried = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (!(arrivals[k] >= 0.0) || !std::isfinite(arrivals[k]))
            throw std::invalid_argument("staircase_waterfill: arrivals must be finite and >= 0");
        result.powers[k].assign(gains[k].size(), 0.0);
        carried += arrivals[k];
        if (gains[k].empty()) continue;
        std::vector<double> f(gains[k].size());
        for (std::size_t n = 0; n < f.size(); ++n) {
            if (!(gains[k][n] > 0.0) || !std::isfinite(gains[k][n]))
                throw std::invalid_argument("staircase_waterfill: gains must be positive and finite (slot " +
                                            std::to_string(k) + ")");
            f[n] = noise_floor / gains[k][n];
        }
        std::sort(f.begin(), f.end());
        slots.push_back(k);
        budget.push_back(carried);
        floors.push_back(std::move(f));
        carried = 0.0;
    }

    const std::size_t T = slots.size();
    std::vector<double> merged;
    std::size_t start = 0;
    while (start < T) {
        // The next segment ends where the segment water level is lowest; ties go to the longest.
        merged.clear();
        double segment_budget = 0.0;
        double best_level = std::numeric_limits<double>::infinity();
        std::size_t best_end = start;
        for (std::size_t j = start; j < T; ++j) {
            const std::size_t mid = merged.size();
            merged.insert(merged.end(), floors[j].begin(), floors[j].end());
            std::inplace_merge(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(mid), merged.end());
            segment_budget += budget[j];
            const double level = sorted_water_level(merged, segment_budget);
            if (level <= best_level) {
                best_level = level;
                best_end = j;
            }
        }
        for (std::size_t t = start; t <= best_end; ++t) {
            const std::size_t k = slots[t];
            for (std::size_t n = 0; n < gains[k].size(); ++n)
                result.powers[k][n] = std::max(0.0, best_level - noise_floor / gains[k][n]);
            result.water_levels[k] = best_level;
        }
        start = best_end + 1;
    }
    return result;
}

}  // namespace wpcn
