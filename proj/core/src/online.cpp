#include "wpcn/online.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wpcn/waterfill.hpp"

namespace wpcn {

WindowPlan window_partition(std::size_t num_slots, std::size_t window_size) {
    if (num_slots < 2) throw std::invalid_argument("window_partition: need at least two slots");
    if (window_size < 1 || window_size > num_slots - 1)
        throw std::invalid_argument("window_partition: window size must lie in [1, K-1]");
    if ((num_slots - 1) % window_size != 0)
        throw std::invalid_argument("window_partition: window size " + std::to_string(window_size) +
                                    " does not divide K-1 = " + std::to_string(num_slots - 1));
    WindowPlan plan;
    plan.window_size = window_size;
    plan.num_windows = (num_slots - 1) / window_size + 1;
    plan.cutoff = optimal_cutoff(window_size);
    plan.windows.push_back({0, 0});
    for (std::size_t w = 1; w < plan.num_windows; ++w)
        plan.windows.push_back({1 + (w - 1) * window_size, w * window_size});
    return plan;
}

double secretary_probability(std::size_t window_size, std::size_t cutoff) {
    if (cutoff < 1 || cutoff > window_size)
        throw std::invalid_argument("secretary_probability: cutoff must lie in [1, L]");
    const double L = static_cast<double>(window_size);
    if (cutoff == 1) return 1.0 / L;
    double tail = 0.0;
    for (std::size_t l = cutoff; l <= window_size; ++l) tail += 1.0 / static_cast<double>(l - 1);
    return static_cast<double>(cutoff - 1) / L * tail;
}

std::size_t optimal_cutoff(std::size_t window_size) {
    if (window_size < 1) throw std::invalid_argument("optimal_cutoff: window size must be >= 1");
    std::size_t best = 1;
    double best_p = secretary_probability(window_size, 1);
    for (std::size_t f = 2; f <= window_size; ++f) {
        const double p = secretary_probability(window_size, f);
        if (p > best_p) {
            best_p = p;
            best = f;
        }
    }
    return best;
}

CutoffStoppingRule::CutoffStoppingRule(std::size_t window_size, std::size_t cutoff)
    : window_size_(window_size), cutoff_(cutoff) {
    if (cutoff < 1 || cutoff > window_size)
        throw std::invalid_argument("CutoffStoppingRule: cutoff must lie in [1, L]");
}

bool CutoffStoppingRule::offer(double value) {
    if (stopped_ || seen_ >= window_size_) throw std::logic_error("CutoffStoppingRule: window already closed");
    ++seen_;
    // Strict dominance; the first offer dominates vacuously.
    const bool dominates = seen_ == 1 || value > best_seen_;
    const bool stop = (seen_ >= cutoff_ && dominates) || seen_ == window_size_;
    best_seen_ = seen_ == 1 ? value : std::max(best_seen_, value);
    stopped_ = stop;
    return stop;
}

std::string_view to_string(OnlineVariant v) {
    switch (v) {
        case OnlineVariant::kOttDynamic: return "ott_dynamic";
        case OnlineVariant::kNoObserveDynamic: return "no_observe_dynamic";
        case OnlineVariant::kOttStatic: return "ott_static";
        case OnlineVariant::kNoObserveStatic: return "no_observe_static";
    }
    return "unknown";
}

OnlineVariant parse_online_variant(std::string_view name) {
    for (auto v : {OnlineVariant::kOttDynamic, OnlineVariant::kNoObserveDynamic, OnlineVariant::kOttStatic,
                   OnlineVariant::kNoObserveStatic})
        if (to_string(v) == name) return v;
    throw std::invalid_argument("unknown online variant '" + std::string(name) + "'");
}

namespace {

bool observes(OnlineVariant v) { return v == OnlineVariant::kOttDynamic || v == OnlineVariant::kOttStatic; }
bool dynamic_sc(OnlineVariant v) { return v == OnlineVariant::kOttDynamic || v == OnlineVariant::kNoObserveDynamic; }

}  // namespace

OnlineScheduler::OnlineScheduler(const SystemConfig& config, std::size_t window_size, OnlineVariant variant)
    : config_(config),
      plan_(window_partition(config.num_slots, window_size)),
      variant_(variant),
      wet_power_(static_cast<double>(config.num_slots) * config.eap_avg_power /
                 static_cast<double>(plan_.num_windows - 1)),
      rule_(1, 1) {
    config_.validate();
    if (!dynamic_sc(variant_) && config_.num_subchannels < static_cast<std::size_t>(kStaticOnlineSc))
        throw std::invalid_argument("OnlineScheduler: static SC outside the SC set");
    state_.battery = config_.initial_battery;
}

SlotDecision OnlineScheduler::step(std::span<const double> h_row, std::span<const double> g_row) {
    const std::size_t K = config_.num_slots;
    const std::size_t N = config_.num_subchannels;
    if (state_.slot >= K) throw std::logic_error("OnlineScheduler: block already finished");
    if (h_row.size() != N || g_row.size() != N) throw std::invalid_argument("OnlineScheduler: row length != N");

    const std::size_t w = state_.window;
    const SlotRange window = plan_.windows[w];
    if (state_.slot_in_window == 0 && w >= 1) {
        state_.fired = false;
        state_.best_observed = 0.0;
        rule_ = CutoffStoppingRule(window.size(), observes(variant_) ? plan_.cutoff : 1);
    }

    // Observable WET gain and the SC it belongs to.
    int sc = kStaticOnlineSc;
    if (dynamic_sc(variant_)) {
        sc = 1;
        for (std::size_t n = 1; n < N; ++n)
            if (h_row[n] > h_row[static_cast<std::size_t>(sc - 1)]) sc = static_cast<int>(n + 1);
    }
    const double observed = h_row[static_cast<std::size_t>(sc - 1)];

    bool fire = false;
    if (w == 0) fire = true;
    else if (w + 1 < plan_.num_windows && !state_.fired) fire = rule_.offer(observed);
    if (w >= 1) state_.best_observed = state_.slot_in_window == 0 ? observed : std::max(state_.best_observed, observed);

    SlotDecision decision;
    decision.p.assign(N, 0.0);
    if (fire) {
        decision.wet_sc = sc;
        decision.q = wet_power_;
        state_.fired = true;
    }

    const double budget = config_.initial_battery / static_cast<double>(K) + state_.carried_per_slot;
    std::vector<double> floors;
    std::vector<std::size_t> scs;
    for (std::size_t n = 0; n < N; ++n) {
        if (fire && static_cast<std::size_t>(sc - 1) == n) continue;
        floors.push_back(config_.noise_floor() / g_row[n]);
        scs.push_back(n);
    }
    double spent = 0.0;
    if (!floors.empty()) {
        const WfResult wf = waterfill_floors(floors, budget);
        for (std::size_t i = 0; i < scs.size(); ++i) {
            decision.p[scs[i]] = wf.powers[i];
            spent += wf.powers[i];
        }
    }

    const double harvest = fire ? config_.efficiency * observed * decision.q : 0.0;
    state_.battery += harvest - spent;
    state_.harvested_this_window += harvest;

    ++state_.slot;
    if (++state_.slot_in_window == window.size()) {
        // The next window spends this window's harvest in equal per-slot shares.
        state_.carried_per_slot =
            w + 1 < plan_.num_windows ? state_.harvested_this_window / static_cast<double>(plan_.window_size) : 0.0;
        state_.harvested_this_window = 0.0;
        state_.slot_in_window = 0;
        ++state_.window;
    }
    return decision;
}

OnlineRun run_online(const ChannelBlock& channels, const SystemConfig& config, std::size_t window_size,
                     OnlineVariant variant) {
    validate_channels(channels, config);
    const std::size_t K = config.num_slots;
    const std::size_t N = config.num_subchannels;
    OnlineScheduler scheduler(config, window_size, variant);

    OnlineRun run{std::vector<int>(K, kNoWet), {std::vector<double>(K, 0.0), Matrix(K, N), 0.0}};
    for (std::size_t k = 0; k < K; ++k) {
        SlotDecision d = scheduler.step(channels.h.row(k), channels.g.row(k));
        run.wet_sc[k] = d.wet_sc;
        run.schedule.q[k] = d.q;
        std::copy(d.p.begin(), d.p.end(), run.schedule.p.row(k).begin());
    }
    run.schedule.rate = achievable_rate(run.schedule.p, channels.g, config);
    return run;
}

}  // namespace wpcn
