#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"
#include "wpcn/harness.hpp"
#include "wpcn/offline.hpp"
#include "wpcn/online.hpp"
#include "wpcn/rng.hpp"

namespace {

using namespace wpcn;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    std::size_t realizations = 200;
    unsigned threads = 0;
    std::vector<std::string> schemes;
};

void add_common(CLI::App& cmd, CommonOptions& opts, bool with_output) {
    cmd.add_option("-c,--config", opts.config_path, "JSON system configuration (defaults: reference setup)")
        ->check(CLI::ExistingFile);
    cmd.add_option("-s,--seed", opts.seed, "Master seed")->envname("WPCN_SEED")->capture_default_str();
    cmd.add_option("-r,--realizations", opts.realizations, "Channel realizations per point")
        ->envname("WPCN_REALIZATIONS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_output) {
        cmd.add_option("-o,--out", opts.out_path, "CSV output path (stdout if omitted)");
        cmd.add_option("-j,--threads", opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
        cmd.add_option("--schemes", opts.schemes, "Comma-separated scheme names")->delimiter(',');
    }
}

SystemConfig base_config(const CommonOptions& opts) {
    return opts.config_path.empty() ? reference_config() : load_config(opts.config_path);
}

std::vector<Scheme> pick_schemes(const CommonOptions& opts, std::vector<Scheme> fallback) {
    if (opts.schemes.empty()) return fallback;
    std::vector<Scheme> out;
    for (const auto& name : opts.schemes) out.push_back(parse_scheme(name));
    return out;
}

void emit(const ResultTable& table, const CommonOptions& opts) {
    if (opts.out_path.empty()) write_csv(table, std::cout);
    else emit_csv(table, opts.out_path);
}

ExperimentSpec spec_from(const CommonOptions& opts) {
    ExperimentSpec spec;
    spec.base = base_config(opts);
    spec.seed = opts.seed;
    spec.realizations = opts.realizations;
    spec.threads = opts.threads;
    return spec;
}

std::vector<double> mw_to_w(const std::vector<double>& mw) {
    std::vector<double> w;
    for (double v : mw) w.push_back(v * 1e-3);
    return w;
}

// Small-instance cross-check of the offline schemes against exhaustive search.
int oracle_check(const CommonOptions& opts, std::size_t slots, std::size_t subchannels) {
    SystemConfig config = base_config(opts);
    config.num_slots = slots;
    config.num_subchannels = subchannels;
    config.validate();

    std::size_t violations = 0;
    double worst_dynamic = 0.0, worst_static = 0.0;
    std::printf("instance,exhaustive,dynamic_joint,static_joint,upper_bound\n");
    for (std::size_t r = 0; r < opts.realizations; ++r) {
        const ChannelBlock ch = generate_channel(config, realization_seed(opts.seed, r));
        const Allocation best = exhaustive_sc_oracle(ch, config, slots, subchannels);
        const ScAllocation dyn_sc = dynamic_sc_allocation(ch.h);
        const PowerSchedule dyn = joint_power_allocation(dyn_sc, ch, config);
        const Allocation stat = static_sc_search(ch, config);
        const double ub = upper_bound_rate(ch, config);
        std::printf("%zu,%.12g,%.12g,%.12g,%.12g\n", r, best.schedule.rate, dyn.rate, stat.schedule.rate, ub);

        const double ex = best.schedule.rate;
        const double tol = 1e-9 * std::max(ex, 1e-300);
        if (dyn.rate > ex + tol || stat.schedule.rate > ex + tol || ex > ub + tol) ++violations;
        if (!check_feasibility(best.schedule, ch, config, best.sc.pi) || !check_feasibility(dyn, ch, config, dyn_sc.pi))
            ++violations;
        if (ex > 0.0) {
            worst_dynamic = std::max(worst_dynamic, (ex - dyn.rate) / ex);
            worst_static = std::max(worst_static, (ex - stat.schedule.rate) / ex);
        }
    }
    std::fprintf(stderr, "%zu instances (K=%zu, N=%zu): %zu violation(s); largest shortfall vs exhaustive: "
                         "dynamic %.3g%%, static %.3g%%\n",
                 opts.realizations, slots, subchannels, violations, 100.0 * worst_dynamic, 100.0 * worst_static);
    return violations == 0 ? 0 : 1;
}

void demo(const CommonOptions& opts, std::size_t window_size) {
    const SystemConfig config = base_config(opts);
    const ChannelBlock ch = generate_channel(config, opts.seed);

    const ScAllocation sc = dynamic_sc_allocation(ch.h);
    const JointSolution sol = joint_power_allocation_detailed(sc, ch, config);
    std::printf("K=%zu N=%zu Q=%g mW B1=%g J seed=%llu\n", config.num_slots, config.num_subchannels,
                config.eap_avg_power * 1e3, config.initial_battery, static_cast<unsigned long long>(opts.seed));
    std::printf("dominating WET slots (slot:SC:q[mW]):");
    for (std::size_t d : sol.structure.slots)
        std::printf(" %zu:%d:%.4g", d + 1, sc.pi[d], sol.schedule.q[d] * 1e3);
    std::printf("\nbinding index %zu, %s\n\n", sol.binding_index, sol.two_level ? "two-level" : "single-level");

    std::printf("%-20s %s\n", "scheme", "rate [bps/Hz]");
    for (Scheme s : all_schemes())
        std::printf("%-20s %.6f\n", std::string(to_string(s)).c_str(),
                    run_scheme(s, ch, config, window_size, opts.seed));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM wireless-powered communication: offline/online resource allocation simulator"};
    app.require_subcommand(1);

    CommonOptions offline_opts;
    std::vector<double> offline_q{10, 20, 40, 60, 80};
    auto* offline = app.add_subcommand("offline-sweep", "Mean rate of the offline schemes versus EAP power");
    add_common(*offline, offline_opts, true);
    offline->add_option("--q-mw", offline_q, "EAP average powers in mW")->delimiter(',')->capture_default_str();

    CommonOptions online_opts;
    std::string sweep = "q";
    std::vector<double> online_q{10, 20, 40, 60, 80};
    std::vector<std::size_t> window_sizes{1, 3, 5, 15};
    std::size_t online_window = 15;
    double online_fixed_q = 60;
    auto* online = app.add_subcommand("online-sweep", "Mean rate of the online schemes versus EAP power or window size");
    add_common(*online, online_opts, true);
    online->add_option("--sweep", sweep, "Sweep variable: q (EAP power) or L (window size)")
        ->check(CLI::IsMember({"q", "L"}))
        ->capture_default_str();
    online->add_option("--q-mw", online_q, "EAP powers in mW for --sweep q")->delimiter(',')->capture_default_str();
    online->add_option("--window-sizes", window_sizes, "Window sizes for --sweep L")->delimiter(',')->capture_default_str();
    online->add_option("-L,--window-size", online_window, "Window size for --sweep q")->capture_default_str();
    online->add_option("--fixed-q-mw", online_fixed_q, "EAP power in mW for --sweep L")->capture_default_str();

    CommonOptions oracle_opts;
    oracle_opts.realizations = 50;
    std::size_t oracle_slots = 4, oracle_scs = 2;
    auto* oracle = app.add_subcommand("oracle-check", "Compare offline schemes with exhaustive SC search on small blocks");
    add_common(*oracle, oracle_opts, false);
    oracle->add_option("-K,--slots", oracle_slots, "Slots per block")->check(CLI::Range(2, 6))->capture_default_str();
    oracle->add_option("-N,--subchannels", oracle_scs, "Sub-channels")->check(CLI::Range(1, 3))->capture_default_str();

    CommonOptions demo_opts;
    std::size_t demo_window = 15;
    auto* demo_cmd = app.add_subcommand("demo", "Run every scheme on one channel realization");
    add_common(*demo_cmd, demo_opts, false);
    demo_cmd->add_option("-L,--window-size", demo_window, "Window size for online schemes")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (offline->parsed()) {
            ExperimentSpec spec = spec_from(offline_opts);
            spec.sweep = SweepVariable::kEapPower;
            spec.sweep_values = mw_to_w(offline_q);
            spec.schemes = pick_schemes(offline_opts, offline_schemes());
            emit(run_experiment(spec), offline_opts);
        } else if (online->parsed()) {
            ExperimentSpec spec = spec_from(online_opts);
            std::vector<Scheme> fallback{Scheme::kDynamicJoint};
            for (Scheme s : online_schemes()) fallback.push_back(s);
            spec.schemes = pick_schemes(online_opts, fallback);
            if (sweep == "q") {
                spec.sweep = SweepVariable::kEapPower;
                spec.sweep_values = mw_to_w(online_q);
                spec.window_size = online_window;
            } else {
                spec.sweep = SweepVariable::kWindowSize;
                spec.base.eap_avg_power = online_fixed_q * 1e-3;
                spec.sweep_values.assign(window_sizes.begin(), window_sizes.end());
            }
            emit(run_experiment(spec), online_opts);
        } else if (oracle->parsed()) {
            return oracle_check(oracle_opts, oracle_slots, oracle_scs);
        } else if (demo_cmd->parsed()) {
            demo(demo_opts, demo_window);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wpcn: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
