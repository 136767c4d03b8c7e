#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpc/chart.hpp"
#include "wpc/errors.hpp"
#include "wpc/sim.hpp"

using namespace wpc;

namespace {

ChartConfig small_config(int phase1 = 5, int n = 4) {
    return ChartConfig(0.0027, phase1, n,
                       PriorSpec(2.1, 2.5, 7.5, Reliability{0.95}));
}

std::vector<Subgroup> synthetic(int periods, int n, double delta, double beta,
                                std::uint64_t seed, int first_period = 1) {
    std::vector<Subgroup> out;
    const WeibullParams params(delta, beta);
    for (int k = 0; k < periods; ++k) {
        RngStream stream{seed, 0, static_cast<std::uint64_t>(first_period + k)};
        out.push_back(Subgroup{weibull_sample(params, n, stream),
                               first_period + k});
    }
    return out;
}

} // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(ChartConfig(0.0, 5, 4, PriorSpec(2.1, 2.5, 7.5, Reliability{0.95})),
                    invalid_parameter);
    CHECK_THROWS_AS(ChartConfig(0.0027, 0, 4, PriorSpec(2.1, 2.5, 7.5, Reliability{0.95})),
                    invalid_parameter);
    CHECK_THROWS_AS(ChartConfig(0.0027, 5, 0, PriorSpec(2.1, 2.5, 7.5, Reliability{0.95})),
                    invalid_parameter);
}

TEST_CASE("limits freeze at the end of Phase I") {
    ChartRun run = make_chart_run(small_config());
    CHECK_THROWS_AS(freeze(run), invalid_parameter);

    const auto data = synthetic(9, 4, 3.4, 5.0, 11u);
    std::vector<ChartPoint> pts;
    for (const auto& s : data) pts.push_back(step(run, s));

    const LimitPair frozen = freeze(run);
    CHECK(frozen.period == 5);
    CHECK(frozen.lcl == pts[4].lcl);
    CHECK(frozen.ucl == pts[4].ucl);
    // Identical on repeated calls.
    const LimitPair again = freeze(run);
    CHECK(again.lcl == frozen.lcl);
    CHECK(again.ucl == frozen.ucl);

    for (int k = 5; k < 9; ++k) {
        CHECK(pts[k].phase == Phase::phase2);
        CHECK(pts[k].lcl == frozen.lcl);
        CHECK(pts[k].ucl == frozen.ucl);
    }
    for (int k = 0; k < 5; ++k) CHECK(pts[k].phase == Phase::phase1);
    // Phase I limits evolve.
    CHECK(pts[0].lcl != pts[4].lcl);
}

TEST_CASE("a gross scale shift signals in Phase II") {
    ChartRun run = make_chart_run(small_config());
    for (const auto& s : synthetic(5, 4, 3.4, 5.0, 7u)) step(run, s);
    // Two post-freeze subgroups drawn 100x larger.
    bool signalled = false;
    for (const auto& s : synthetic(2, 4, 340.0, 5.0, 7u, 6))
        signalled = step(run, s).signal || signalled;
    CHECK(signalled);
    CHECK(run.points.back().estimate > run.frozen_limits->ucl);
}

TEST_CASE("identical streams give a flat ratio chart at exactly 1") {
    RatioRun run = make_ratio_run(small_config(), small_config());
    const auto data = synthetic(8, 4, 3.4, 5.0, 23u);
    for (const auto& s : data) {
        step(run.x_run, s);
        step(run.y_run, s);
        const ChartPoint pt = step_ratio(run);
        CHECK(pt.estimate == 1.0);
        CHECK(pt.signal == false);
        CHECK(pt.lcl * pt.ucl == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(run.prior_limits.lcl * run.prior_limits.ucl ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(run.phase1_end_context.has_value());
}

TEST_CASE("ratio run rejects mismatched configurations and lockstep breaks") {
    CHECK_THROWS_AS(make_ratio_run(small_config(5), small_config(6)),
                    invalid_parameter);

    RatioRun run = make_ratio_run(small_config(), small_config());
    CHECK_THROWS_AS(step_ratio(run), invalid_parameter);
    const auto data = synthetic(2, 4, 3.4, 5.0, 5u);
    step(run.x_run, data[0]);
    CHECK_THROWS_AS(step_ratio(run), invalid_parameter);
    step(run.y_run, data[0]);
    step_ratio(run);
    CHECK_THROWS_AS(step_ratio(run), invalid_parameter);
}

TEST_CASE("beta chart follows the same Phase I/II protocol") {
    ChartRun run = make_chart_run(small_config());
    CHECK_THROWS_AS(beta_step(run), invalid_parameter);
    const auto data = synthetic(7, 4, 3.4, 5.0, 31u);
    std::vector<BetaPoint> pts;
    for (const auto& s : data) {
        step(run, s);
        pts.push_back(beta_step(run));
        CHECK_THROWS_AS(beta_step(run), invalid_parameter);
    }
    CHECK(run.frozen_beta_limits.has_value());
    for (int k = 5; k < 7; ++k) {
        CHECK(pts[k].lcl == run.frozen_beta_limits->lcl);
        CHECK(pts[k].ucl == run.frozen_beta_limits->ucl);
    }
}

TEST_CASE("replays are bit-identical") {
    const auto data = synthetic(6, 4, 3.4, 5.0, 99u);
    ChartRun a = make_chart_run(small_config());
    ChartRun b = make_chart_run(small_config());
    for (const auto& s : data) {
        const ChartPoint pa = step(a, s);
        const ChartPoint pb = step(b, s);
        CHECK(pa.estimate == pb.estimate);
        CHECK(pa.lcl == pb.lcl);
        CHECK(pa.ucl == pb.ucl);
    }
}

TEST_CASE("out-of-order subgroups are rejected") {
    ChartRun run = make_chart_run(small_config());
    const auto data = synthetic(2, 4, 3.4, 5.0, 3u);
    step(run, data[0]);
    CHECK_THROWS_AS(step(run, data[0]), invalid_parameter);
    Subgroup skipped = data[1];
    skipped.period_index = 5;
    CHECK_THROWS_AS(step(run, skipped), invalid_parameter);
}
