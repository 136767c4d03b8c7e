#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wpc/chart.hpp"
#include "wpc/sim.hpp"

namespace wpc {

// One subgroup per row, comma-separated positive decimals, optional header
// row, '#' comment lines ignored. Errors carry row/column locations.
std::vector<Subgroup> parse_dataset(const std::string& path);

// Flat `key = value` config ('#' comments). Keys follow RunConfig below.
struct RunConfig {
    double reliability_r = 0.0;
    double alpha = 0.0;
    int subgroup_size = 0;
    int phase1_samples = 0;
    double x_prior_percentile = 0.0;
    double x_beta_low = 0.0;
    double x_beta_high = 0.0;
    // The y block is required only for ratio runs.
    double y_prior_percentile = 0.0;
    double y_beta_low = 0.0;
    double y_beta_high = 0.0;
    std::string output_path;
    std::string plot_path;

    ChartConfig chart_config_x() const;
    ChartConfig chart_config_y() const;
};

RunConfig parse_run_config(const std::string& path);

struct ScenarioConfig {
    RunConfig chart; // priors / alpha / phase1 reused from the chart keys
    double x_delta = 0.0, x_beta = 0.0;
    double y_delta = 0.0, y_beta = 0.0;
    bool has_shift = false;
    int shift_period = 0;
    double shift_x_delta = 0.0, shift_x_beta = 0.0;
    double shift_y_delta = 0.0, shift_y_beta = 0.0;
    int replicates = 1000;
    int max_periods = 60;
    std::uint64_t seed = 0;

    Scenario scenario() const;
};

ScenarioConfig parse_scenario_config(const std::string& path);

// Chart CSV: k,estimate,lcl,ucl,beta_hat,beta_bar,phase,signal. Numbers are
// written with round-trip precision.
void write_chart_csv(std::ostream& os, const ChartRun& run);
void write_chart_csv(const std::string& path, const ChartRun& run);

// Ratio CSV, same columns; beta_hat/beta_bar carry the pooled average and a
// k = 0 row records the prior limits.
void write_ratio_csv(std::ostream& os, const RatioRun& run);
void write_ratio_csv(const std::string& path, const RatioRun& run);

// Beta-chart CSV: k,beta_hat,lcl,ucl,phase,signal.
void write_beta_csv(const std::string& path, const ChartRun& run);

void write_summary_csv(std::ostream& os, const RunLengthSummary& summary,
                       const ScenarioConfig& cfg);
void write_summary_csv(const std::string& path, const RunLengthSummary& summary,
                       const ScenarioConfig& cfg);

// Round-trip helper used by tests and tooling.
struct ParsedChartRow {
    int period;
    double estimate, lcl, ucl, beta_hat, beta_bar;
    std::string phase;
    bool signal;
};
std::vector<ParsedChartRow> parse_chart_csv(std::istream& is);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

} // namespace wpc
