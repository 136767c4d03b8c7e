#pragma once

#include <optional>
#include <vector>

#include "wpc/bayes.hpp"
#include "wpc/limits.hpp"

// Phase I accumulation, limit freezing at the end of Phase I, Phase II
// monitoring with frozen limits, single-point signal rule.

namespace wpc {

enum class Phase { phase1, phase2 };

struct ChartConfig {
    double alpha = 0.0027;
    int phase1_len = 0;
    int subgroup_size = 0;
    PriorSpec prior;
    ChartConfig(double alpha, int phase1_len, int subgroup_size,
                PriorSpec prior);
};

struct ChartPoint {
    int period = 0;
    double estimate = 0.0;
    double lcl = 0.0;
    double ucl = 0.0;
    Phase phase = Phase::phase1;
    bool signal = false;
};

struct BetaPoint {
    int period = 0;
    double beta_hat = 0.0;
    double lcl = 0.0;
    double ucl = 0.0;
    bool signal = false;
};

struct ChartRun {
    ChartConfig config;
    PosteriorState posterior;
    std::vector<ChartPoint> points;
    std::optional<LimitPair> frozen_limits;
    std::vector<BetaPoint> beta_points;
    std::optional<LimitPair> frozen_beta_limits;
};

ChartRun make_chart_run(const ChartConfig& config);

// Ingests one subgroup and judges the new point: against the evolving
// limits during Phase I, against the frozen pair afterwards.
ChartPoint step(ChartRun& run, const Subgroup& s);

// Marginal-posterior quantile bands for the latest period; same freeze
// protocol as the percentile chart.
BetaPoint beta_step(ChartRun& run);

// The limits in force for Phase II; callable once period phase1_len is
// reached, idempotent afterwards.
LimitPair freeze(ChartRun& run);

struct RatioRun {
    ChartRun x_run;
    ChartRun y_run;
    std::vector<ChartPoint> ratio_points;
    LimitPair prior_limits; // k = 0
    std::optional<LimitPair> frozen_limits;
    std::optional<RatioContext> phase1_end_context;
};

// Both configs must agree on alpha, phase1_len, subgroup size and R.
RatioRun make_ratio_run(const ChartConfig& config_x,
                        const ChartConfig& config_y);

// Advances the ratio chart after both underlying runs reached the same k.
ChartPoint step_ratio(RatioRun& run);

} // namespace wpc
