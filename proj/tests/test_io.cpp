#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "wpc/chart.hpp"
#include "wpc/errors.hpp"
#include "wpc/io.hpp"

using namespace wpc;

namespace {

std::string write_temp(const std::string& contents) {
    static int counter = 0;
    std::string path = "io_test_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path);
    out << contents;
    return path;
}

} // namespace

TEST_CASE("fixture datasets parse with the expected shape") {
    const auto t1 = parse_dataset(std::string(WPC_DATA_DIR) + "/table1_x.csv");
    CHECK(t1.size() == 25);
    for (size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1[i].values.size() == 4);
        CHECK(t1[i].period_index == static_cast<int>(i) + 1);
    }
    CHECK(t1[0].values[0] == 3.7);
    CHECK(t1[24].values[3] == doctest::Approx(t1[24].values[3]));

    const auto t3a = parse_dataset(std::string(WPC_DATA_DIR) + "/table3a.csv");
    CHECK(t3a.size() == 44);
    CHECK(t3a[0].values.size() == 2);
}

TEST_CASE("dataset errors carry locations") {
    const std::string bad = write_temp("3.7,3.3\n2.1,-1.0\n");
    CHECK_THROWS_WITH_AS(parse_dataset(bad),
                         doctest::Contains("row 2"), parse_error);
    std::remove(bad.c_str());

    const std::string ragged = write_temp("3.7,3.3\n2.1,2.2,2.3\n");
    CHECK_THROWS_AS(parse_dataset(ragged), parse_error);
    std::remove(ragged.c_str());

    const std::string garbage = write_temp("a,b\nc,d\n");
    // First non-numeric row is tolerated as a header, second is not.
    CHECK_THROWS_AS(parse_dataset(garbage), parse_error);
    std::remove(garbage.c_str());

    CHECK_THROWS_AS(parse_dataset("does_not_exist.csv"), parse_error);
}

TEST_CASE("config parsing errors") {
    const std::string missing = write_temp(
        "reliability_R = 0.95\nalpha = 0.0027\nsubgroup_size = 4\n");
    CHECK_THROWS_WITH_AS(parse_run_config(missing),
                         doctest::Contains("missing key"), config_error);
    std::remove(missing.c_str());

    const std::string unknown = write_temp(
        "reliability_R = 0.95\nalpha = 0.0027\nsubgroup_size = 4\n"
        "phase1_samples = 10\nx.prior_percentile = 2.9\nx.beta_low = 2.5\n"
        "x.beta_high = 7.5\nbogus_key = 1\n");
    CHECK_THROWS_WITH_AS(parse_run_config(unknown),
                         doctest::Contains("unknown key"), config_error);
    std::remove(unknown.c_str());

    const std::string dup = write_temp("alpha = 0.0027\nalpha = 0.01\n");
    CHECK_THROWS_WITH_AS(parse_run_config(dup),
                         doctest::Contains("duplicate key"), config_error);
    std::remove(dup.c_str());
}

TEST_CASE("fixture configs load") {
    const RunConfig ex1 =
        parse_run_config(std::string(WPC_DATA_DIR) + "/example1.cfg");
    CHECK(ex1.reliability_r == 0.95);
    CHECK(ex1.alpha == 0.0027);
    CHECK(ex1.subgroup_size == 4);
    CHECK(ex1.phase1_samples == 10);
    CHECK(ex1.x_prior_percentile == 2.9);
    CHECK(ex1.y_prior_percentile == 3.8);
    const ChartConfig cx = ex1.chart_config_x();
    CHECK(cx.prior.beta_low == 2.5);
    CHECK(cx.prior.beta_high == 7.5);

    const ScenarioConfig sc = parse_scenario_config(
        std::string(WPC_DATA_DIR) + "/scenario_in_control.cfg");
    CHECK(sc.replicates == 1000);
    CHECK(sc.x_delta == 4.5);
    CHECK(sc.scenario().config_x.phase1_len == sc.chart.phase1_samples);
}

TEST_CASE("chart CSV round-trips losslessly") {
    ChartConfig cfg(0.0027, 2, 4, PriorSpec(2.9, 2.5, 7.5, Reliability{0.95}));
    ChartRun run = make_chart_run(cfg);
    step(run, Subgroup{{3.7, 3.3, 4.9, 4.3}, 1});
    step(run, Subgroup{{3.9, 4.1, 3.5, 4.4}, 2});
    step(run, Subgroup{{4.0, 3.8, 4.2, 3.6}, 3});

    std::ostringstream os;
    write_chart_csv(os, run);
    std::istringstream is(os.str());
    const auto rows = parse_chart_csv(is);
    REQUIRE(rows.size() == run.points.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].period == run.points[i].period);
        CHECK(rows[i].estimate == run.points[i].estimate);
        CHECK(rows[i].lcl == run.points[i].lcl);
        CHECK(rows[i].ucl == run.points[i].ucl);
        CHECK(rows[i].beta_hat == run.posterior.beta_hat_history[i]);
        CHECK(rows[i].signal == run.points[i].signal);
    }
    CHECK(rows[0].phase == "phase1");
    CHECK(rows[2].phase == "phase2");
}

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 2.5918049749174599, 1e-300, 6.02214076e23,
                     -0.0027, 12345.678901234567}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
}
