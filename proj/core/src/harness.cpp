#include "wpcn/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wpcn/baselines.hpp"
#include "wpcn/offline.hpp"
#include "wpcn/online.hpp"
#include "wpcn/rng.hpp"

namespace wpcn {

namespace {

constexpr Scheme kAllSchemes[] = {
    Scheme::kUpperBound,      Scheme::kDynamicJoint,   Scheme::kStaticJoint, Scheme::kDynamicConstant,
    Scheme::kStaticConstant,  Scheme::kRandomArrival,  Scheme::kOttDynamic,  Scheme::kOttStatic,
    Scheme::kNoObserveDynamic, Scheme::kNoObserveStatic,
};

OnlineVariant online_variant(Scheme s) {
    switch (s) {
        case Scheme::kOttDynamic: return OnlineVariant::kOttDynamic;
        case Scheme::kOttStatic: return OnlineVariant::kOttStatic;
        case Scheme::kNoObserveDynamic: return OnlineVariant::kNoObserveDynamic;
        case Scheme::kNoObserveStatic: return OnlineVariant::kNoObserveStatic;
        default: throw std::invalid_argument("not an online scheme: " + std::string(to_string(s)));
    }
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::kUpperBound: return "upper_bound";
        case Scheme::kDynamicJoint: return "dynamic_joint";
        case Scheme::kStaticJoint: return "static_joint";
        case Scheme::kDynamicConstant: return "dynamic_constant";
        case Scheme::kStaticConstant: return "static_constant";
        case Scheme::kRandomArrival: return "random_arrival";
        case Scheme::kOttDynamic: return "ott_dynamic";
        case Scheme::kOttStatic: return "ott_static";
        case Scheme::kNoObserveDynamic: return "no_observe_dynamic";
        case Scheme::kNoObserveStatic: return "no_observe_static";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : kAllSchemes)
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

bool is_online(Scheme s) {
    return s == Scheme::kOttDynamic || s == Scheme::kOttStatic || s == Scheme::kNoObserveDynamic ||
           s == Scheme::kNoObserveStatic;
}

std::vector<Scheme> all_schemes() { return {std::begin(kAllSchemes), std::end(kAllSchemes)}; }

std::vector<Scheme> offline_schemes() {
    std::vector<Scheme> out;
    for (Scheme s : kAllSchemes)
        if (!is_online(s)) out.push_back(s);
    return out;
}

std::vector<Scheme> online_schemes() {
    std::vector<Scheme> out;
    for (Scheme s : kAllSchemes)
        if (is_online(s)) out.push_back(s);
    return out;
}

std::string_view sweep_name(SweepVariable v) {
    return v == SweepVariable::kEapPower ? "eap_power_mw" : "window_size";
}

void ExperimentSpec::validate() const {
    base.validate();
    if (realizations < 1) throw std::invalid_argument("ExperimentSpec: realizations must be >= 1");
    if (sweep_values.empty()) throw std::invalid_argument("ExperimentSpec: empty sweep");
    if (schemes.empty()) throw std::invalid_argument("ExperimentSpec: no schemes selected");
    bool any_online = false;
    for (Scheme s : schemes) any_online = any_online || is_online(s);

    const std::size_t K = base.num_slots;
    auto check_window = [&](double value) {
        if (value < 1.0 || value != std::floor(value))
            throw std::invalid_argument("ExperimentSpec: window size must be a positive integer");
        window_partition(K, static_cast<std::size_t>(value));
    };
    if (sweep == SweepVariable::kWindowSize) {
        if (!any_online)
            throw std::invalid_argument("ExperimentSpec: a window-size sweep needs at least one online scheme");
        for (double L : sweep_values) check_window(L);
    } else {
        for (double q : sweep_values)
            if (!(q >= 0.0) || !std::isfinite(q)) throw std::invalid_argument("ExperimentSpec: EAP power must be >= 0");
        if (any_online) check_window(static_cast<double>(window_size));
    }
}

double run_scheme(Scheme scheme, const ChannelBlock& channels, const SystemConfig& config, std::size_t window_size,
                  std::uint64_t seed) {
    switch (scheme) {
        case Scheme::kUpperBound: return upper_bound_rate(channels, config);
        case Scheme::kDynamicJoint:
            return joint_power_allocation(dynamic_sc_allocation(channels.h), channels, config).rate;
        case Scheme::kStaticJoint: return static_sc_search(channels, config).schedule.rate;
        case Scheme::kDynamicConstant: return constant_wet_run(channels, config, ScMode::kDynamic);
        case Scheme::kStaticConstant: return constant_wet_run(channels, config, ScMode::kStatic);
        case Scheme::kRandomArrival: return random_arrival_run(channels, config, seed);
        default: return run_online(channels, config, window_size, online_variant(scheme)).schedule.rate;
    }
}

RateCube run_realizations(const ExperimentSpec& spec) {
    spec.validate();
    const std::size_t P = spec.sweep_values.size();
    const std::size_t S = spec.schemes.size();
    const std::size_t R = spec.realizations;
    RateCube rates(P, std::vector<std::vector<double>>(S, std::vector<double>(R, 0.0)));

    auto evaluate = [&](std::size_t r) {
        const std::uint64_t seed = realization_seed(spec.seed, r);
        const ChannelBlock channels = generate_channel(spec.base, seed);
        for (std::size_t i = 0; i < P; ++i) {
            SystemConfig config = spec.base;
            std::size_t window = spec.window_size;
            if (spec.sweep == SweepVariable::kEapPower) config.eap_avg_power = spec.sweep_values[i];
            else window = static_cast<std::size_t>(spec.sweep_values[i]);
            for (std::size_t s = 0; s < S; ++s) {
                // Offline schemes do not depend on the window size.
                if (spec.sweep == SweepVariable::kWindowSize && i > 0 && !is_online(spec.schemes[s])) {
                    rates[i][s][r] = rates[0][s][r];
                    continue;
                }
                rates[i][s][r] = run_scheme(spec.schemes[s], channels, config, window, seed);
            }
        }
    };

    unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(R)));
    if (workers == 1) {
        for (std::size_t r = 0; r < R; ++r) evaluate(r);
        return rates;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < R; r = next++) {
                    try {
                        evaluate(r);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = R;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
    return rates;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
    const RateCube rates = run_realizations(spec);
    const double R = static_cast<double>(spec.realizations);
    ResultTable table;
    for (std::size_t i = 0; i < spec.sweep_values.size(); ++i)
        for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
            const auto& samples = rates[i][s];
            double sum = 0.0;
            for (double v : samples) sum += v;
            const double mean = sum / R;
            double sq = 0.0;
            for (double v : samples) sq += (v - mean) * (v - mean);
            const double std_rate = samples.size() > 1 ? std::sqrt(sq / (R - 1.0)) : 0.0;

            ResultRow row;
            row.scheme = std::string(to_string(spec.schemes[s]));
            row.sweep_name = std::string(sweep_name(spec.sweep));
            row.sweep_value = spec.sweep == SweepVariable::kEapPower ? spec.sweep_values[i] * 1e3 : spec.sweep_values[i];
            row.mean_rate = mean;
            row.std_rate = std_rate;
            row.realizations = spec.realizations;
            row.seed = spec.seed;
            table.push_back(std::move(row));
        }
    return table;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& field, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size())
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + field + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& field, std::size_t line) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
    if (field.empty() || field.front() == '-' || end != field.c_str() + field.size())
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad integer '" + field + "'");
    return v;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& row : table)
        out << row.scheme << ',' << row.sweep_name << ',' << format_double(row.sweep_value) << ','
            << format_double(row.mean_rate) << ',' << format_double(row.std_rate) << ',' << row.realizations << ','
            << row.seed << '\n';
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path.string() + "' for writing");
    write_csv(table, out);
    out.flush();
    if (!out) throw std::runtime_error("emit_csv: write to '" + path.string() + "' failed");
}

ResultTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or unexpected header");
    ResultTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7)
            throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 7 fields");
        ResultRow row;
        row.scheme = fields[0];
        row.sweep_name = fields[1];
        row.sweep_value = parse_double(fields[2], line_no);
        row.mean_rate = parse_double(fields[3], line_no);
        row.std_rate = parse_double(fields[4], line_no);
        row.realizations = parse_unsigned(fields[5], line_no);
        row.seed = parse_unsigned(fields[6], line_no);
        table.push_back(std::move(row));
    }
    return table;
}

ResultTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open '" + path.string() + "'");
    return read_csv(in);
}

}  // namespace wpcn
