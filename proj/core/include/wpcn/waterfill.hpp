#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace wpcn {

/// Raised when a power budget cannot be placed on any sub-channel.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WfResult {
    std::vector<double> powers;
    double water_level = 0.0;  // nu; powers[i] = max(0, nu - noise_floor / gains[i])
    int iterations = 0;        // bisection steps
};

/// Maximizes sum_i log2(1 + gains[i] p_i / noise_floor) subject to sum_i p_i = budget, p >= 0.
///
/// The water level is bracketed in [0, budget + max_i noise_floor/gains[i]] and
/// bisected to 1e-12 relative width, then recomputed in closed form on the
/// active set so the budget is met to rounding.
WfResult waterfill(std::span<const double> gains, double budget, double noise_floor);

/// Same solver on precomputed floors noise_floor / gain.
WfResult waterfill_floors(std::span<const double> floors, double budget);

/// Water level for `floors` sorted ascending, computed by a linear scan.
double sorted_water_level(std::span<const double> sorted_floors, double budget);

struct StaircaseResult {
    /// powers[k] is aligned with gains[k]; slots may carry different SC counts.
    std::vector<std::vector<double>> powers;
    /// Per-slot water level. NaN for slots with no sub-channel.
    std::vector<double> water_levels;
};

/// Water-filling over slots under energy causality.
///
/// arrivals[k] becomes available at the start of slot k (fold any initial
/// battery into arrivals[0]). Maximizes sum_k sum_n log2(1 + g p / noise_floor)
/// subject to cumulative spending never exceeding cumulative arrivals. Each
/// segment between binding constraints shares one water level; the levels are
/// non-decreasing and rise only where a constraint binds.
StaircaseResult staircase_waterfill(std::span<const double> arrivals,
                                    const std::vector<std::vector<double>>& gains,
                                    double noise_floor);

}  // namespace wpcn
