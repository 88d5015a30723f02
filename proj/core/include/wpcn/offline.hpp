#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/matrix.hpp"

namespace wpcn {

/// Sub-channel index meaning "no energy transfer in this slot".
inline constexpr int kNoWet = 0;

/// WET sub-channel per slot: pi[k] in {0 (none), 1..N}. The last slot never carries WET.
struct ScAllocation {
    std::vector<int> pi;

    /// Throws std::invalid_argument unless every entry lies in [0, N] and the last is 0.
    void validate(std::size_t num_subchannels) const;

    friend bool operator==(const ScAllocation&, const ScAllocation&) = default;
};

/// Inclusive slot range [first, last], 0-based.
struct SlotRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last - first + 1; }
    friend bool operator==(const SlotRange&, const SlotRange&) = default;
};

/// Causally dominating slots: slots whose WET gain strictly exceeds every earlier
/// slot's, together with the intervals they cut the block into. intervals[0]
/// ends at slots[0]; the final interval ends at the last slot.
struct DominatingStructure {
    std::vector<std::size_t> slots;
    std::vector<SlotRange> intervals;
};

/// EAP powers q (one per slot, on pi[k]) and user powers p (K x N), with the resulting rate.
struct PowerSchedule {
    std::vector<double> q;
    Matrix p;
    double rate = 0.0;
};

/// Which sub-channels may carry information in a slot.
enum class WitSupport {
    kExcludeWetSc,  // every SC except pi[k]
    kAllScs,        // all SCs, as with ideal interference cancellation at the DAP
};

enum class Constraint { kNone, kNegativePower, kWetOnDummy, kWitOnWetSc, kAveragePower, kEnergyCausality };

std::string to_string(Constraint c);

struct FeasibilityReport {
    Constraint violated = Constraint::kNone;
    std::size_t slot = 0;  // 0-based slot of the first violation
    double excess = 0.0;   // amount by which the constraint is exceeded

    bool feasible() const noexcept { return violated == Constraint::kNone; }
    explicit operator bool() const noexcept { return feasible(); }
};

/// Relative slack allowed on the power and causality constraints.
inline constexpr double kFeasibilityTol = 1e-9;

/// (1 / (K N)) * sum_k sum_n log2(1 + g p / (Gamma sigma^2)) in bps/Hz.
double achievable_rate(const Matrix& p, const Matrix& g, const SystemConfig& config);

/// Checks non-negativity, the average EAP power budget and energy causality.
///
/// Causality tolerance is kFeasibilityTol * (RHS + B1 + total harvested energy),
/// i.e. relative to the instance's own energy scale.
FeasibilityReport check_feasibility(const PowerSchedule& schedule, const ChannelBlock& channels,
                                    const SystemConfig& config, std::span<const int> wet_sc,
                                    WitSupport support = WitSupport::kExcludeWetSc);

/// Best WET sub-channel of every slot (1-based, ties to the smallest index).
std::vector<int> best_sc_per_slot(const Matrix& h);

/// h_on_pi[k] is the WET gain on pi[k] (0 where pi[k] == kNoWet).
DominatingStructure dominating_set(std::span<const double> h_on_pi, std::span<const int> pi);

/// Best SC on causally dominating slots of the best-SC allocation, no WET elsewhere.
ScAllocation dynamic_sc_allocation(const Matrix& h);

/// Full output of the joint WET/WIT power optimizer for a fixed SC allocation.
struct JointSolution {
    PowerSchedule schedule;
    DominatingStructure structure;
    /// 1-based index x of the first binding dominating slot (|D|+1 means the last slot);
    /// 0 when D is empty and only the initial battery is spread.
    std::size_t binding_index = 0;
    bool two_level = false;  // first segment funded by B1 alone with its own water level
};

/// Optimal EAP and user powers for a fixed SC allocation.
///
/// Enumerates every candidate first-binding dominating slot, solves both the
/// single-level and two-level water-filling forms for it, maps each back to
/// (q, p), drops infeasible candidates and keeps the best rate (earliest on ties).
JointSolution joint_power_allocation_detailed(const ScAllocation& sc, const ChannelBlock& channels,
                                              const SystemConfig& config,
                                              WitSupport support = WitSupport::kExcludeWetSc);

PowerSchedule joint_power_allocation(const ScAllocation& sc, const ChannelBlock& channels,
                                     const SystemConfig& config,
                                     WitSupport support = WitSupport::kExcludeWetSc);

struct Allocation {
    ScAllocation sc;
    PowerSchedule schedule;
};

/// One SC fixed for WET over slots 1..K-1, chosen by trying all N (and no WET at all).
Allocation static_sc_search(const ChannelBlock& channels, const SystemConfig& config);

/// Rate with WET and WIT allowed to share sub-channels (dynamic allocation, WIT on all SCs).
double upper_bound_rate(const ChannelBlock& channels, const SystemConfig& config);

/// Exhaustive search over all (N+1)^(K-1) allocations. Refuses instances above the size guard.
Allocation exhaustive_sc_oracle(const ChannelBlock& channels, const SystemConfig& config,
                                std::size_t max_slots = 6, std::size_t max_subchannels = 3);

}  // namespace wpcn
