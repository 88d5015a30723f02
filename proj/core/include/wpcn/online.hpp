#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/offline.hpp"

namespace wpcn {

/// Fixed window layout: window 0 is slot 0 alone, the remaining K-1 slots form
/// consecutive windows of `window_size` slots each.
struct WindowPlan {
    std::size_t window_size = 1;  // L
    std::size_t num_windows = 0;  // W = (K-1)/L + 1
    std::size_t cutoff = 1;       // f*(L), 1-based position of the first slot allowed to stop
    std::vector<SlotRange> windows;
};

/// Throws std::invalid_argument unless 1 <= L <= K-1 and L divides K-1.
WindowPlan window_partition(std::size_t num_slots, std::size_t window_size);

/// Probability that the cutoff rule picks the best of L exchangeable values.
double secretary_probability(std::size_t window_size, std::size_t cutoff);

/// Smallest cutoff maximizing secretary_probability.
std::size_t optimal_cutoff(std::size_t window_size);

/// Observe-then-stop rule for one window: skip the first cutoff-1 offers, then
/// accept the first offer strictly above everything seen so far; accept the
/// last offer if nothing was accepted earlier.
class CutoffStoppingRule {
public:
    CutoffStoppingRule(std::size_t window_size, std::size_t cutoff);

    /// Feeds the next observation; returns true if the rule stops here.
    bool offer(double value);

    bool stopped() const noexcept { return stopped_; }
    std::size_t position() const noexcept { return seen_; }

private:
    std::size_t window_size_;
    std::size_t cutoff_;
    std::size_t seen_ = 0;
    double best_seen_ = 0.0;
    bool stopped_ = false;
};

enum class OnlineVariant { kOttDynamic, kNoObserveDynamic, kOttStatic, kNoObserveStatic };

std::string_view to_string(OnlineVariant v);
/// Accepts ott_dynamic, no_observe_dynamic, ott_static, no_observe_static.
OnlineVariant parse_online_variant(std::string_view name);

/// SC used for WET by the static online variants.
inline constexpr int kStaticOnlineSc = 1;

/// Causal state carried from slot to slot.
struct OnlinePolicyState {
    std::size_t slot = 0;            // next slot to schedule
    std::size_t window = 0;          // index of the window containing `slot`
    std::size_t slot_in_window = 0;  // 0-based position of `slot` in its window
    double best_observed = 0.0;      // largest observable WET gain so far in this window
    bool fired = false;              // WET already performed in this window
    double battery = 0.0;            // energy stored before `slot`
    double harvested_this_window = 0.0;
    double carried_per_slot = 0.0;   // previous window's harvest spread over this window
};

struct SlotDecision {
    int wet_sc = kNoWet;
    double q = 0.0;
    std::vector<double> p;  // length N, zero on the WET SC
};

/// Slot-by-slot scheduler that sees only the current slot's channels.
class OnlineScheduler {
public:
    OnlineScheduler(const SystemConfig& config, std::size_t window_size, OnlineVariant variant);

    /// Schedules the next slot from its WET gains h_row and WIT gains g_row.
    SlotDecision step(std::span<const double> h_row, std::span<const double> g_row);

    const OnlinePolicyState& state() const noexcept { return state_; }
    const WindowPlan& plan() const noexcept { return plan_; }

private:
    SystemConfig config_;
    WindowPlan plan_;
    OnlineVariant variant_;
    double wet_power_;
    OnlinePolicyState state_;
    CutoffStoppingRule rule_;
};

struct OnlineRun {
    std::vector<int> wet_sc;
    PowerSchedule schedule;
};

/// Runs the scheduler across a whole block.
OnlineRun run_online(const ChannelBlock& channels, const SystemConfig& config, std::size_t window_size,
                     OnlineVariant variant);

}  // namespace wpcn
