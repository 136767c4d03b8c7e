#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wpc/chart.hpp"
#include "wpc/errors.hpp"
#include "wpc/io.hpp"
#include "wpc/kernels.hpp"
#include "wpc/sim.hpp"
#include "wpc/svg.hpp"

namespace {

void drive_run(wpc::ChartRun& run, const std::vector<wpc::Subgroup>& data,
               bool with_beta) {
    for (const auto& s : data) {
        wpc::step(run, s);
        if (with_beta) wpc::beta_step(run);
    }
}

int cmd_chart(const std::string& config_path, const std::string& data_path,
              std::string out_path, std::string plot_path, bool beta_chart) {
    const wpc::RunConfig cfg = wpc::parse_run_config(config_path);
    if (out_path.empty()) out_path = cfg.output_path;
    if (plot_path.empty()) plot_path = cfg.plot_path;

    wpc::ChartRun run = wpc::make_chart_run(cfg.chart_config_x());
    drive_run(run, wpc::parse_dataset(data_path), beta_chart);

    if (out_path.empty())
        wpc::write_chart_csv(std::cout, run);
    else
        wpc::write_chart_csv(out_path, run);
    if (beta_chart && !out_path.empty())
        wpc::write_beta_csv(out_path + ".beta.csv", run);
    if (!plot_path.empty()) {
        wpc::render_chart_svg(plot_path, run, "Weibull percentile chart");
        if (beta_chart)
            wpc::render_beta_svg(plot_path + ".beta.svg", run,
                                 "Weibull shape chart");
    }
    return 0;
}

int cmd_ratio(const std::string& config_path, const std::string& x_path,
              const std::string& y_path, std::string out_prefix,
              std::string plot_prefix) {
    const wpc::RunConfig cfg = wpc::parse_run_config(config_path);
    if (out_prefix.empty()) out_prefix = cfg.output_path;
    if (plot_prefix.empty()) plot_prefix = cfg.plot_path;
    if (out_prefix.empty())
        throw wpc::config_error("ratio: an output prefix is required "
                                "(--out or output_path)");

    const auto data_x = wpc::parse_dataset(x_path);
    const auto data_y = wpc::parse_dataset(y_path);
    if (data_x.size() != data_y.size())
        throw wpc::parse_error("ratio: period counts differ between datasets");

    wpc::RatioRun run =
        wpc::make_ratio_run(cfg.chart_config_x(), cfg.chart_config_y());
    for (size_t i = 0; i < data_x.size(); ++i) {
        wpc::step(run.x_run, data_x[i]);
        wpc::beta_step(run.x_run);
        wpc::step(run.y_run, data_y[i]);
        wpc::beta_step(run.y_run);
        wpc::step_ratio(run);
    }

    wpc::write_chart_csv(out_prefix + ".x.csv", run.x_run);
    wpc::write_chart_csv(out_prefix + ".y.csv", run.y_run);
    wpc::write_ratio_csv(out_prefix + ".ratio.csv", run);
    wpc::write_beta_csv(out_prefix + ".beta_x.csv", run.x_run);
    wpc::write_beta_csv(out_prefix + ".beta_y.csv", run.y_run);
    if (!plot_prefix.empty()) {
        wpc::render_chart_svg(plot_prefix + ".x.svg", run.x_run,
                              "Percentile chart, process x");
        wpc::render_chart_svg(plot_prefix + ".y.svg", run.y_run,
                              "Percentile chart, process y");
        wpc::render_ratio_svg(plot_prefix + ".ratio.svg", run,
                              "Percentile ratio chart");
        wpc::render_beta_svg(plot_prefix + ".beta_x.svg", run.x_run,
                             "Shape chart, process x");
        wpc::render_beta_svg(plot_prefix + ".beta_y.svg", run.y_run,
                             "Shape chart, process y");
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, std::string out_path) {
    const wpc::ScenarioConfig cfg = wpc::parse_scenario_config(config_path);
    const wpc::RunLengthSummary summary = wpc::run_scenario(cfg.scenario());
    if (out_path.empty())
        wpc::write_summary_csv(std::cout, summary, cfg);
    else
        wpc::write_summary_csv(out_path, summary, cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian control charts for Weibull percentiles and their ratio"};
    app.require_subcommand(1);

    std::string config_path, data_path, x_path, y_path;
    std::string out_path, plot_path;
    bool beta_chart = false;

    auto* chart = app.add_subcommand("chart", "single-process percentile chart");
    chart->add_option("--config", config_path, "run configuration file")->required();
    chart->add_option("--data", data_path, "subgroup CSV")->required();
    chart->add_option("--out", out_path, "output CSV (default: stdout)");
    chart->add_option("--plot", plot_path, "SVG plot file");
    chart->add_flag("--beta-chart", beta_chart, "also emit the shape chart");

    auto* ratio = app.add_subcommand("ratio", "two processes plus their ratio");
    ratio->add_option("--config", config_path, "run configuration file")->required();
    ratio->add_option("--x", x_path, "process x subgroup CSV")->required();
    ratio->add_option("--y", y_path, "process y subgroup CSV")->required();
    ratio->add_option("--out", out_path, "output file prefix");
    ratio->add_option("--plot", plot_path, "SVG plot file prefix");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo run-length study");
    sim->add_option("--config", config_path, "scenario configuration file")->required();
    sim->add_option("--out", out_path, "summary CSV (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(chart))
            return cmd_chart(config_path, data_path, out_path, plot_path,
                             beta_chart);
        if (app.got_subcommand(ratio))
            return cmd_ratio(config_path, x_path, y_path, out_path, plot_path);
        return cmd_simulate(config_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
