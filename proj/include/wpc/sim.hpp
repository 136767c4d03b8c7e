#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wpc/chart.hpp"

// Monte Carlo evaluation of the three-chart pipeline: false-alarm behaviour
// in control and run length to detection under shifts. Replicates draw from
// disjoint counter-based RNG streams so results do not depend on execution
// order or thread count.

namespace wpc {

// Stateless counter-based generator: every variate is a hash of
// (seed, replicate, period, index).
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t replicate = 0;
    std::uint64_t period = 0;

    // Uniform on the open interval (0, 1).
    double uniform(std::uint64_t index) const;
};

// Inverse-CDF sampling, x = delta (-ln U)^{1/beta}.
std::vector<double> weibull_sample(const WeibullParams& params, int count,
                                   const RngStream& stream);

struct ProcessShift {
    int period = 0; // first period drawn from the new parameters
    WeibullParams x;
    WeibullParams y;
};

struct Scenario {
    WeibullParams true_params_x;
    WeibullParams true_params_y;
    std::optional<ProcessShift> shift;
    ChartConfig config_x;
    ChartConfig config_y;
    int replicates = 1000;
    int max_periods = 60;
    std::uint64_t seed = 0;
};

struct ChartSummary {
    int signalled = 0;             // replicates with >= 1 Phase II signal
    double mean_run_length = 0.0;  // over signalling replicates
    double rl_q10 = 0.0, rl_q50 = 0.0, rl_q90 = 0.0;
    // Index 0 is the first Phase II period.
    std::vector<double> false_alarm_fraction;
    // Absolute period of the first Phase II signal per replicate, 0 if none.
    std::vector<int> first_signal_period;
};

struct RunLengthSummary {
    ChartSummary x;
    ChartSummary y;
    ChartSummary ratio;
    int replicates = 0;
    int error_replicates = 0;
    int run_length_origin = 0; // period run lengths are counted from
};

RunLengthSummary run_scenario(const Scenario& s);

} // namespace wpc
