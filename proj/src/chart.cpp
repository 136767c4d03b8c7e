#include "wpc/chart.hpp"

#include <cmath>

#include "wpc/errors.hpp"

namespace wpc {

ChartConfig::ChartConfig(double alpha_, int phase1_len_, int subgroup_size_,
                         PriorSpec prior_)
    : alpha(alpha_),
      phase1_len(phase1_len_),
      subgroup_size(subgroup_size_),
      prior(prior_) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw invalid_parameter("ChartConfig: alpha must lie in (0, 0.5)");
    if (phase1_len < 1)
        throw invalid_parameter("ChartConfig: phase1_len must be >= 1");
    if (subgroup_size < 1)
        throw invalid_parameter("ChartConfig: subgroup_size must be >= 1");
}

ChartRun make_chart_run(const ChartConfig& config) {
    return ChartRun{config, init_state(config.prior, config.subgroup_size),
                    {}, std::nullopt, {}, std::nullopt};
}

ChartPoint step(ChartRun& run, const Subgroup& s) {
    run.posterior = ingest_subgroup(run.posterior, s);
    const int k = run.posterior.period();

    ChartPoint pt;
    pt.period = k;
    pt.estimate = run.posterior.percentile_hat;

    if (k <= run.config.phase1_len) {
        const LimitPair current = percentile_limits(
            run.posterior.accumulator, run.posterior.beta_bar, k,
            run.config.subgroup_size, run.config.alpha);
        pt.phase = Phase::phase1;
        pt.lcl = current.lcl;
        pt.ucl = current.ucl;
        if (k == run.config.phase1_len) run.frozen_limits = current;
    } else {
        pt.phase = Phase::phase2;
        pt.lcl = run.frozen_limits->lcl;
        pt.ucl = run.frozen_limits->ucl;
    }
    pt.signal = pt.estimate < pt.lcl || pt.estimate > pt.ucl;
    run.points.push_back(pt);
    return pt;
}

BetaPoint beta_step(ChartRun& run) {
    const int k = run.posterior.period();
    if (k < 1) throw invalid_parameter("beta_step: no period ingested");
    if (static_cast<int>(run.beta_points.size()) >= k)
        throw invalid_parameter("beta_step: period already recorded");

    BetaPoint pt;
    pt.period = k;
    pt.beta_hat = run.posterior.beta_hat_history.back();
    if (k <= run.config.phase1_len) {
        const LimitPair bands = beta_chart_bands(run.posterior, run.config.alpha);
        pt.lcl = bands.lcl;
        pt.ucl = bands.ucl;
        if (k == run.config.phase1_len) run.frozen_beta_limits = bands;
    } else {
        pt.lcl = run.frozen_beta_limits->lcl;
        pt.ucl = run.frozen_beta_limits->ucl;
    }
    pt.signal = pt.beta_hat < pt.lcl || pt.beta_hat > pt.ucl;
    run.beta_points.push_back(pt);
    return pt;
}

LimitPair freeze(ChartRun& run) {
    if (!run.frozen_limits)
        throw invalid_parameter("freeze: Phase I not completed yet");
    return *run.frozen_limits;
}

RatioRun make_ratio_run(const ChartConfig& config_x,
                        const ChartConfig& config_y) {
    if (config_x.alpha != config_y.alpha ||
        config_x.phase1_len != config_y.phase1_len ||
        config_x.subgroup_size != config_y.subgroup_size ||
        config_x.prior.level.value != config_y.prior.level.value)
        throw invalid_parameter("ratio run: chart configurations must agree");

    RatioRun run{make_chart_run(config_x), make_chart_run(config_y),
                 {}, {}, std::nullopt, std::nullopt};
    const double pooled_b_bar = 0.5 * (elicit_b_bar(config_x.prior) +
                                       elicit_b_bar(config_y.prior));
    run.prior_limits = prior_ratio_limits(run.x_run.posterior.prior.scale,
                                          run.y_run.posterior.prior.scale,
                                          pooled_b_bar, config_x.alpha);
    return run;
}

ChartPoint step_ratio(RatioRun& run) {
    const int kx = run.x_run.posterior.period();
    const int ky = run.y_run.posterior.period();
    if (kx != ky || kx < 1)
        throw invalid_parameter("step_ratio: process runs out of lockstep");
    if (static_cast<int>(run.ratio_points.size()) >= kx)
        throw invalid_parameter("step_ratio: period already recorded");

    ChartPoint pt;
    pt.period = kx;
    pt.estimate =
        run.x_run.posterior.percentile_hat / run.y_run.posterior.percentile_hat;

    const int phase1 = run.x_run.config.phase1_len;
    if (kx <= phase1) {
        // The pivot assumes one common shape, so both accumulators are
        // recomputed with the pooled running mean; reusing each chart's own
        // accumulator would make C(k) scale-dependent whenever the two
        // shape estimates drift apart.
        const PosteriorState& px = run.x_run.posterior;
        const PosteriorState& py = run.y_run.posterior;
        const double pooled = 0.5 * (px.beta_bar + py.beta_bar);
        RatioContext ctx{accumulator_from_logs(px.log_data,
                                               px.used_prior.scale, pooled,
                                               px.level),
                         accumulator_from_logs(py.log_data,
                                               py.used_prior.scale, pooled,
                                               py.level),
                         pooled, kx, run.x_run.config.subgroup_size};
        const LimitPair current = ratio_limits(ctx, run.x_run.config.alpha);
        pt.phase = Phase::phase1;
        pt.lcl = current.lcl;
        pt.ucl = current.ucl;
        if (kx == phase1) {
            run.frozen_limits = current;
            run.phase1_end_context = ctx;
        }
    } else {
        pt.phase = Phase::phase2;
        pt.lcl = run.frozen_limits->lcl;
        pt.ucl = run.frozen_limits->ucl;
    }
    pt.signal = pt.estimate < pt.lcl || pt.estimate > pt.ucl;
    run.ratio_points.push_back(pt);
    return pt;
}

} // namespace wpc
