#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/config.hpp"

namespace wpcn {

enum class Scheme {
    kUpperBound,
    kDynamicJoint,
    kStaticJoint,
    kDynamicConstant,
    kStaticConstant,
    kRandomArrival,
    kOttDynamic,
    kOttStatic,
    kNoObserveDynamic,
    kNoObserveStatic,
};

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);
bool is_online(Scheme s);

/// Every scheme, in declaration order.
std::vector<Scheme> all_schemes();
std::vector<Scheme> offline_schemes();
std::vector<Scheme> online_schemes();

enum class SweepVariable { kEapPower, kWindowSize };

/// Column value used in CSV output: "eap_power_mw" or "window_size".
std::string_view sweep_name(SweepVariable v);

struct ExperimentSpec {
    SystemConfig base = reference_config();
    SweepVariable sweep = SweepVariable::kEapPower;
    /// EAP powers in watts, or window sizes, depending on `sweep`.
    std::vector<double> sweep_values;
    /// Window size used by online schemes when sweeping the EAP power.
    std::size_t window_size = 15;
    std::vector<Scheme> schemes;
    std::size_t realizations = 200;
    std::uint64_t seed = 1;
    std::filesystem::path output;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    /// Throws std::invalid_argument on an empty grid, R = 0, a window size that does not
    /// divide K-1, or a window-size sweep without any online scheme.
    void validate() const;
};

struct ResultRow {
    std::string scheme;
    std::string sweep_name;
    double sweep_value = 0.0;  // mW for EAP power sweeps, L for window sweeps
    double mean_rate = 0.0;    // bps/Hz
    double std_rate = 0.0;     // sample standard deviation
    std::size_t realizations = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

using ResultTable = std::vector<ResultRow>;

/// Rate of one scheme on one channel realization. `seed` feeds the random-arrival draw.
double run_scheme(Scheme scheme, const ChannelBlock& channels, const SystemConfig& config, std::size_t window_size,
                  std::uint64_t seed);

/// Per-realization rates, indexed [sweep point][scheme][realization].
using RateCube = std::vector<std::vector<std::vector<double>>>;
RateCube run_realizations(const ExperimentSpec& spec);

/// Runs the grid and aggregates mean and sample standard deviation, row order
/// sweep-major then scheme. Deterministic in the spec regardless of threads.
ResultTable run_experiment(const ExperimentSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "scheme,sweep_name,sweep_value,mean_rate_bpshz,std_rate,realizations,seed";

void write_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(std::istream& in);
ResultTable read_csv(const std::filesystem::path& path);

}  // namespace wpcn
