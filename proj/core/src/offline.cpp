#include "wpcn/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wpcn/waterfill.hpp"

namespace wpcn {

void ScAllocation::validate(std::size_t num_subchannels) const {
    if (pi.empty()) throw std::invalid_argument("ScAllocation: empty");
    for (int n : pi)
        if (n < 0 || static_cast<std::size_t>(n) > num_subchannels)
            throw std::invalid_argument("ScAllocation: SC index " + std::to_string(n) + " outside [0, N]");
    if (pi.back() != kNoWet) throw std::invalid_argument("ScAllocation: last slot must not carry WET");
}

std::string to_string(Constraint c) {
    switch (c) {
        case Constraint::kNone: return "none";
        case Constraint::kNegativePower: return "negative power";
        case Constraint::kWetOnDummy: return "EAP power on dummy SC";
        case Constraint::kWitOnWetSc: return "user power on WET SC";
        case Constraint::kAveragePower: return "average EAP power";
        case Constraint::kEnergyCausality: return "energy causality";
    }
    return "unknown";
}

double achievable_rate(const Matrix& p, const Matrix& g, const SystemConfig& config) {
    if (p.rows() != g.rows() || p.cols() != g.cols())
        throw std::invalid_argument("achievable_rate: power/gain dimension mismatch");
    if (p.empty()) return 0.0;
    const double nf = config.noise_floor();
    double total = 0.0;
    const auto pv = p.data();
    const auto gv = g.data();
    for (std::size_t i = 0; i < pv.size(); ++i)
        if (pv[i] > 0.0) total += std::log1p(gv[i] * pv[i] / nf);
    return total / std::numbers::ln2 / static_cast<double>(p.rows() * p.cols());
}

FeasibilityReport check_feasibility(const PowerSchedule& schedule, const ChannelBlock& channels,
                                    const SystemConfig& config, std::span<const int> wet_sc,
                                    WitSupport support) {
    const std::size_t K = channels.num_slots();
    const std::size_t N = channels.num_subchannels();
    if (schedule.q.size() != K || schedule.p.rows() != K || schedule.p.cols() != N || wet_sc.size() != K)
        throw std::invalid_argument("check_feasibility: dimension mismatch");

    double q_total = 0.0;
    double harvest_total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double q = schedule.q[k];
        if (!(q >= 0.0)) return {Constraint::kNegativePower, k, -q};
        if (wet_sc[k] == kNoWet) {
            if (q != 0.0) return {Constraint::kWetOnDummy, k, q};
        } else {
            harvest_total += config.efficiency * channels.h(k, static_cast<std::size_t>(wet_sc[k] - 1)) * q;
        }
        for (std::size_t n = 0; n < N; ++n) {
            const double p = schedule.p(k, n);
            if (!(p >= 0.0)) return {Constraint::kNegativePower, k, -p};
        }
        if (support == WitSupport::kExcludeWetSc && wet_sc[k] != kNoWet) {
            const double p = schedule.p(k, static_cast<std::size_t>(wet_sc[k] - 1));
            if (p != 0.0) return {Constraint::kWitOnWetSc, k, p};
        }
        q_total += q;
    }

    const double q_limit = static_cast<double>(K) * config.eap_avg_power;
    if (q_total > q_limit * (1.0 + kFeasibilityTol)) return {Constraint::kAveragePower, K - 1, q_total - q_limit};

    const double scale = config.initial_battery + harvest_total;
    double spent = 0.0;
    double harvested = 0.0;  // through slot i-1
    for (std::size_t i = 0; i < K; ++i) {
        for (double p : schedule.p.row(i)) spent += p;
        const double available = harvested + config.initial_battery;
        if (spent > available + kFeasibilityTol * (available + scale))
            return {Constraint::kEnergyCausality, i, spent - available};
        if (wet_sc[i] != kNoWet)
            harvested += config.efficiency * channels.h(i, static_cast<std::size_t>(wet_sc[i] - 1)) * schedule.q[i];
    }
    return {};
}

std::vector<int> best_sc_per_slot(const Matrix& h) {
    std::vector<int> best(h.rows(), kNoWet);
    for (std::size_t k = 0; k < h.rows(); ++k) {
        double top = 0.0;  // the dummy SC has gain 0
        for (std::size_t n = 0; n < h.cols(); ++n)
            if (h(k, n) > top) {
                top = h(k, n);
                best[k] = static_cast<int>(n + 1);
            }
    }
    return best;
}

DominatingStructure dominating_set(std::span<const double> h_on_pi, std::span<const int> pi) {
    if (h_on_pi.size() != pi.size()) throw std::invalid_argument("dominating_set: size mismatch");
    const std::size_t K = pi.size();
    DominatingStructure out;
    if (K == 0) return out;

    double running_max = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const bool wet = pi[k] != kNoWet;
        if (wet != (h_on_pi[k] > 0.0))
            throw std::invalid_argument("dominating_set: gain must be zero exactly on dummy-SC slots");
        if (k + 1 < K && wet && h_on_pi[k] > running_max) out.slots.push_back(k);
        running_max = std::max(running_max, h_on_pi[k]);
    }

    std::size_t first = 0;
    for (std::size_t d : out.slots) {
        out.intervals.push_back({first, d});
        first = d + 1;
    }
    out.intervals.push_back({first, K - 1});
    return out;
}

ScAllocation dynamic_sc_allocation(const Matrix& h) {
    const std::vector<int> best = best_sc_per_slot(h);
    std::vector<double> h_best(best.size());
    for (std::size_t k = 0; k < best.size(); ++k) h_best[k] = h(k, static_cast<std::size_t>(best[k] - 1));

    ScAllocation sc{std::vector<int>(best.size(), kNoWet)};
    for (std::size_t d : dominating_set(h_best, best).slots) sc.pi[d] = best[d];
    return sc;
}

namespace {

struct WitEntry {
    std::size_t slot;
    std::size_t sc;
};

std::vector<WitEntry> wit_entries(std::span<const int> pi, std::size_t N, WitSupport support) {
    std::vector<WitEntry> entries;
    entries.reserve(pi.size() * N);
    for (std::size_t k = 0; k < pi.size(); ++k)
        for (std::size_t n = 0; n < N; ++n) {
            if (support == WitSupport::kExcludeWetSc && pi[k] != kNoWet && static_cast<std::size_t>(pi[k] - 1) == n)
                continue;
            entries.push_back({k, n});
        }
    return entries;
}

// Waterfill that treats an empty set with positive budget as "no candidate".
bool fill(std::span<const double> floors, double budget, std::span<double> out) {
    if (floors.empty()) return budget == 0.0;
    const WfResult wf = waterfill_floors(floors, budget);
    std::copy(wf.powers.begin(), wf.powers.end(), out.begin());
    return true;
}

}  // namespace

JointSolution joint_power_allocation_detailed(const ScAllocation& sc, const ChannelBlock& channels,
                                              const SystemConfig& config, WitSupport support) {
    config.validate();
    validate_channels(channels, config);
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;
    if (sc.pi.size() != K) throw std::invalid_argument("joint_power_allocation: allocation length != K");
    sc.validate(N);

    const double zeta = config.efficiency;
    const double B1 = config.initial_battery;
    const double wet_budget = zeta * static_cast<double>(K) * config.eap_avg_power;
    const double nf = config.noise_floor();

    std::vector<double> h_on_pi(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        if (sc.pi[k] != kNoWet) h_on_pi[k] = channels.h(k, static_cast<std::size_t>(sc.pi[k] - 1));

    JointSolution best;
    best.structure = dominating_set(h_on_pi, sc.pi);
    best.schedule = {std::vector<double>(K, 0.0), Matrix(K, N), 0.0};
    const auto& D = best.structure.slots;
    const std::size_t m = D.size();

    const std::vector<WitEntry> entries = wit_entries(sc.pi, N, support);
    std::vector<double> floors(entries.size());
    std::vector<double> scaled(entries.size());  // p' per entry

    if (m == 0) {
        // No WET anywhere: a single water-fill of the initial battery.
        for (std::size_t e = 0; e < entries.size(); ++e) floors[e] = nf / channels.g(entries[e].slot, entries[e].sc);
        if (fill(floors, B1, scaled))
            for (std::size_t e = 0; e < entries.size(); ++e) best.schedule.p(entries[e].slot, entries[e].sc) = scaled[e];
        best.schedule.rate = achievable_rate(best.schedule.p, channels.g, config);
        return best;
    }

    // interval_of[k] = i such that slot k lies in intervals[i]; interval i >= 1 is fed by D[i-1].
    std::vector<std::size_t> interval_of(K);
    for (std::size_t i = 0; i < best.structure.intervals.size(); ++i)
        for (std::size_t k = best.structure.intervals[i].first; k <= best.structure.intervals[i].last; ++k)
            interval_of[k] = i;

    double best_rate = -std::numeric_limits<double>::infinity();
    std::vector<double> slot_scale(K);
    PowerSchedule candidate{std::vector<double>(K), Matrix(K, N), 0.0};

    for (std::size_t x = 1; x <= m + 1; ++x) {
        const double h_prev = x == 1 ? 1.0 : h_on_pi[D[x - 2]];
        const std::size_t first_end = x <= m ? D[x - 1] : K - 1;
        const double first_budget = B1 / h_prev;

        for (std::size_t k = 0; k < K; ++k) slot_scale[k] = k <= first_end ? h_prev : h_on_pi[D[interval_of[k] - 1]];
        std::size_t n_first = 0;
        for (std::size_t e = 0; e < entries.size(); ++e) {
            floors[e] = nf / (slot_scale[entries[e].slot] * channels.g(entries[e].slot, entries[e].sc));
            if (entries[e].slot <= first_end) ++n_first;
        }
        const std::span<const double> all_floors(floors);

        for (const bool two_level : {false, true}) {
            const std::span<double> out(scaled);
            bool ok;
            if (!two_level) {
                ok = fill(all_floors, first_budget + wet_budget, out);
            } else {
                ok = fill(all_floors.first(n_first), first_budget, out.first(n_first)) &&
                     fill(all_floors.subspan(n_first), wet_budget, out.subspan(n_first));
            }
            if (!ok) continue;

            std::fill(candidate.q.begin(), candidate.q.end(), 0.0);
            candidate.p = Matrix(K, N);
            double first_sum = 0.0;
            for (std::size_t e = 0; e < entries.size(); ++e) {
                const auto [k, n] = entries[e];
                candidate.p(k, n) = slot_scale[k] * scaled[e];
                if (k <= first_end) first_sum += scaled[e];
                else candidate.q[D[interval_of[k] - 1]] += scaled[e] / zeta;
            }
            if (x >= 2) {
                double surplus = first_sum - first_budget;
                if (std::abs(surplus) <= 1e-12 * (first_budget + wet_budget)) surplus = 0.0;
                candidate.q[D[x - 2]] = surplus / zeta;
            }
            candidate.rate = achievable_rate(candidate.p, channels.g, config);
            if (!check_feasibility(candidate, channels, config, sc.pi, support)) continue;
            if (candidate.rate > best_rate) {
                best_rate = candidate.rate;
                best.schedule = candidate;
                best.binding_index = x;
                best.two_level = two_level;
            }
        }
    }
    return best;
}

PowerSchedule joint_power_allocation(const ScAllocation& sc, const ChannelBlock& channels,
                                     const SystemConfig& config, WitSupport support) {
    return joint_power_allocation_detailed(sc, channels, config, support).schedule;
}

Allocation static_sc_search(const ChannelBlock& channels, const SystemConfig& config) {
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;
    Allocation best;
    bool have = false;
    auto consider = [&](int n) {
        ScAllocation sc{std::vector<int>(K, n)};
        sc.pi.back() = kNoWet;
        PowerSchedule s = joint_power_allocation(sc, channels, config);
        if (!have || s.rate > best.schedule.rate) {
            best = {std::move(sc), std::move(s)};
            have = true;
        }
    };
    for (std::size_t n = 1; n <= N; ++n) consider(static_cast<int>(n));
    consider(kNoWet);
    return best;
}

double upper_bound_rate(const ChannelBlock& channels, const SystemConfig& config) {
    return joint_power_allocation(dynamic_sc_allocation(channels.h), channels, config, WitSupport::kAllScs).rate;
}

Allocation exhaustive_sc_oracle(const ChannelBlock& channels, const SystemConfig& config, std::size_t max_slots,
                                std::size_t max_subchannels) {
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;
    if (K > max_slots || N > max_subchannels)
        throw std::invalid_argument("exhaustive_sc_oracle: instance " + std::to_string(K) + "x" + std::to_string(N) +
                                    " exceeds the " + std::to_string(max_slots) + "x" +
                                    std::to_string(max_subchannels) + " guard");

    ScAllocation sc{std::vector<int>(K, kNoWet)};
    Allocation best;
    bool have = false;
    while (true) {
        PowerSchedule s = joint_power_allocation(sc, channels, config);
        if (!have || s.rate > best.schedule.rate) {
            best = {sc, std::move(s)};
            have = true;
        }
        // Odometer over slots 0..K-2 in base N+1.
        std::size_t k = 0;
        while (k + 1 < K && sc.pi[k] == static_cast<int>(N)) sc.pi[k++] = kNoWet;
        if (k + 1 >= K) break;
        ++sc.pi[k];
    }
    return best;
}

}  // namespace wpcn
