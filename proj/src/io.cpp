#include "wpc/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "wpc/errors.hpp"

namespace wpc {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

} // namespace

std::vector<Subgroup> parse_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open dataset file: " + path);

    std::vector<Subgroup> subgroups;
    std::string line;
    int row = 0;
    size_t width = 0;
    bool header_checked = false;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        std::vector<double> values;
        std::stringstream ss(t);
        std::string cell;
        int col = 0;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            ++col;
            double v;
            if (!parse_double(cell, v)) {
                numeric = false;
                break;
            }
            values.push_back(v);
        }
        if (!numeric) {
            // A single non-numeric first data row is accepted as a header.
            if (!header_checked && subgroups.empty()) {
                header_checked = true;
                continue;
            }
            throw parse_error(path + ": row " + std::to_string(row) +
                              ", column " + std::to_string(col) +
                              ": not a number");
        }
        header_checked = true;
        for (size_t c = 0; c < values.size(); ++c)
            if (!(values[c] > 0.0))
                throw parse_error(path + ": row " + std::to_string(row) +
                                  ", column " + std::to_string(c + 1) +
                                  ": nonpositive value");
        if (width == 0) width = values.size();
        if (values.size() != width)
            throw parse_error(path + ": row " + std::to_string(row) +
                              ": expected " + std::to_string(width) +
                              " values, got " + std::to_string(values.size()));
        subgroups.push_back(
            Subgroup{std::move(values), static_cast<int>(subgroups.size()) + 1});
    }
    if (subgroups.empty()) throw parse_error(path + ": no data rows");
    return subgroups;
}

namespace {

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ": line " + std::to_string(row) +
                               ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(path + ": line " + std::to_string(row) +
                               ": empty key or value");
        if (kv.count(key))
            throw config_error(path + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

class KvReader {
  public:
    KvReader(std::map<std::string, std::string> kv, std::string path)
        : kv_(std::move(kv)), path_(std::move(path)) {}

    double number(const std::string& key) {
        double v;
        if (!parse_double(take(key), v))
            throw config_error(path_ + ": key '" + key + "' is not a number");
        return v;
    }
    double number_or(const std::string& key, double fallback) {
        if (!kv_.count(key)) return fallback;
        return number(key);
    }
    int integer(const std::string& key) {
        const double v = number(key);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw config_error(path_ + ": key '" + key + "' is not an integer");
        return i;
    }
    int integer_or(const std::string& key, int fallback) {
        if (!kv_.count(key)) return fallback;
        return integer(key);
    }
    std::string text_or(const std::string& key, std::string fallback) {
        if (!kv_.count(key)) return fallback;
        return take(key);
    }
    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    void finish() {
        if (!kv_.empty())
            throw config_error(path_ + ": unknown key '" + kv_.begin()->first +
                               "'");
    }

  private:
    std::string take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw config_error(path_ + ": missing key '" + key + "'");
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }
    std::map<std::string, std::string> kv_;
    std::string path_;
};

} // namespace

ChartConfig RunConfig::chart_config_x() const {
    return ChartConfig(alpha, phase1_samples, subgroup_size,
                       PriorSpec(x_prior_percentile, x_beta_low, x_beta_high,
                                 Reliability(reliability_r)));
}

ChartConfig RunConfig::chart_config_y() const {
    return ChartConfig(alpha, phase1_samples, subgroup_size,
                       PriorSpec(y_prior_percentile, y_beta_low, y_beta_high,
                                 Reliability(reliability_r)));
}

RunConfig parse_run_config(const std::string& path) {
    KvReader r(parse_kv_file(path), path);
    RunConfig cfg;
    cfg.reliability_r = r.number("reliability_R");
    cfg.alpha = r.number("alpha");
    cfg.subgroup_size = r.integer("subgroup_size");
    cfg.phase1_samples = r.integer("phase1_samples");
    cfg.x_prior_percentile = r.number("x.prior_percentile");
    cfg.x_beta_low = r.number("x.beta_low");
    cfg.x_beta_high = r.number("x.beta_high");
    cfg.y_prior_percentile = r.number_or("y.prior_percentile", 0.0);
    cfg.y_beta_low = r.number_or("y.beta_low", 0.0);
    cfg.y_beta_high = r.number_or("y.beta_high", 0.0);
    cfg.output_path = r.text_or("output_path", "");
    cfg.plot_path = r.text_or("plot_path", "");
    r.finish();
    return cfg;
}

ScenarioConfig parse_scenario_config(const std::string& path) {
    KvReader r(parse_kv_file(path), path);
    ScenarioConfig sc;
    sc.chart.reliability_r = r.number("reliability_R");
    sc.chart.alpha = r.number("alpha");
    sc.chart.subgroup_size = r.integer("subgroup_size");
    sc.chart.phase1_samples = r.integer("phase1_samples");
    sc.chart.x_prior_percentile = r.number("x.prior_percentile");
    sc.chart.x_beta_low = r.number("x.beta_low");
    sc.chart.x_beta_high = r.number("x.beta_high");
    sc.chart.y_prior_percentile = r.number("y.prior_percentile");
    sc.chart.y_beta_low = r.number("y.beta_low");
    sc.chart.y_beta_high = r.number("y.beta_high");
    sc.x_delta = r.number("x.delta");
    sc.x_beta = r.number("x.beta");
    sc.y_delta = r.number("y.delta");
    sc.y_beta = r.number("y.beta");
    sc.replicates = r.integer("replicates");
    sc.max_periods = r.integer("max_periods");
    sc.seed = static_cast<std::uint64_t>(r.number("seed"));
    if (r.has("shift.period")) {
        sc.has_shift = true;
        sc.shift_period = r.integer("shift.period");
        sc.shift_x_delta = r.number("shift.x.delta");
        sc.shift_x_beta = r.number("shift.x.beta");
        sc.shift_y_delta = r.number("shift.y.delta");
        sc.shift_y_beta = r.number("shift.y.beta");
    }
    r.finish();
    return sc;
}

Scenario ScenarioConfig::scenario() const {
    Scenario s{WeibullParams(x_delta, x_beta), WeibullParams(y_delta, y_beta),
               std::nullopt, chart.chart_config_x(), chart.chart_config_y(),
               replicates, max_periods, seed};
    if (has_shift)
        s.shift = ProcessShift{shift_period,
                               WeibullParams(shift_x_delta, shift_x_beta),
                               WeibullParams(shift_y_delta, shift_y_beta)};
    return s;
}

namespace {

const char* phase_name(Phase p) {
    return p == Phase::phase1 ? "phase1" : "phase2";
}

template <class WriteFn>
void to_file(const std::string& path, WriteFn&& fn) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    fn(out);
}

} // namespace

void write_chart_csv(std::ostream& os, const ChartRun& run) {
    os << "k,estimate,lcl,ucl,beta_hat,beta_bar,phase,signal\n";
    double beta_bar_running = 0.0;
    for (size_t i = 0; i < run.points.size(); ++i) {
        const ChartPoint& p = run.points[i];
        const double beta_hat = run.posterior.beta_hat_history[i];
        beta_bar_running += (beta_hat - beta_bar_running) /
                            static_cast<double>(i + 1);
        os << p.period << ',' << format_double(p.estimate) << ','
           << format_double(p.lcl) << ',' << format_double(p.ucl) << ','
           << format_double(beta_hat) << ','
           << format_double(beta_bar_running) << ',' << phase_name(p.phase)
           << ',' << (p.signal ? 1 : 0) << '\n';
    }
}

void write_chart_csv(const std::string& path, const ChartRun& run) {
    to_file(path, [&](std::ostream& os) { write_chart_csv(os, run); });
}

void write_ratio_csv(std::ostream& os, const RatioRun& run) {
    os << "k,estimate,lcl,ucl,beta_hat,beta_bar,phase,signal\n";
    os << "0,," << format_double(run.prior_limits.lcl) << ','
       << format_double(run.prior_limits.ucl) << ",,"
       << format_double(0.5 * (run.x_run.posterior.prior.b_bar() +
                               run.y_run.posterior.prior.b_bar()))
       << ",prior,0\n";
    for (size_t i = 0; i < run.ratio_points.size(); ++i) {
        const ChartPoint& p = run.ratio_points[i];
        const double bh = 0.5 * (run.x_run.posterior.beta_hat_history[i] +
                                 run.y_run.posterior.beta_hat_history[i]);
        double bbx = 0.0, bby = 0.0;
        for (size_t j = 0; j <= i; ++j) {
            bbx += run.x_run.posterior.beta_hat_history[j];
            bby += run.y_run.posterior.beta_hat_history[j];
        }
        const double pooled =
            0.5 * (bbx + bby) / static_cast<double>(i + 1);
        os << p.period << ',' << format_double(p.estimate) << ','
           << format_double(p.lcl) << ',' << format_double(p.ucl) << ','
           << format_double(bh) << ',' << format_double(pooled) << ','
           << phase_name(p.phase) << ',' << (p.signal ? 1 : 0) << '\n';
    }
}

void write_ratio_csv(const std::string& path, const RatioRun& run) {
    to_file(path, [&](std::ostream& os) { write_ratio_csv(os, run); });
}

void write_beta_csv(const std::string& path, const ChartRun& run) {
    to_file(path, [&](std::ostream& os) {
        os << "k,beta_hat,lcl,ucl,phase,signal\n";
        for (const BetaPoint& p : run.beta_points) {
            os << p.period << ',' << format_double(p.beta_hat) << ','
               << format_double(p.lcl) << ',' << format_double(p.ucl) << ','
               << (p.period <= run.config.phase1_len ? "phase1" : "phase2")
               << ',' << (p.signal ? 1 : 0) << '\n';
        }
    });
}

namespace {

void write_chart_summary(std::ostream& os, const char* name,
                         const ChartSummary& cs) {
    os << name << ',' << cs.signalled << ','
       << format_double(cs.mean_run_length) << ','
       << format_double(cs.rl_q10) << ',' << format_double(cs.rl_q50) << ','
       << format_double(cs.rl_q90) << '\n';
}

} // namespace

void write_summary_csv(std::ostream& os, const RunLengthSummary& summary,
                       const ScenarioConfig& cfg) {
    os << "# scenario: x(delta=" << format_double(cfg.x_delta)
       << ",beta=" << format_double(cfg.x_beta)
       << ") y(delta=" << format_double(cfg.y_delta)
       << ",beta=" << format_double(cfg.y_beta) << ")";
    if (cfg.has_shift)
        os << " shift@" << cfg.shift_period << ": x(delta="
           << format_double(cfg.shift_x_delta)
           << ",beta=" << format_double(cfg.shift_x_beta) << ") y(delta="
           << format_double(cfg.shift_y_delta)
           << ",beta=" << format_double(cfg.shift_y_beta) << ")";
    os << "\n# seed=" << cfg.seed << " replicates=" << summary.replicates
       << " errors=" << summary.error_replicates
       << " run_length_origin=" << summary.run_length_origin << "\n";
    os << "chart,signalled,mean_rl,rl_q10,rl_q50,rl_q90\n";
    write_chart_summary(os, "x", summary.x);
    write_chart_summary(os, "y", summary.y);
    write_chart_summary(os, "ratio", summary.ratio);
    os << "phase2_period,false_alarm_x,false_alarm_y,false_alarm_ratio\n";
    for (size_t i = 0; i < summary.x.false_alarm_fraction.size(); ++i) {
        os << (i + 1) << ',' << format_double(summary.x.false_alarm_fraction[i])
           << ',' << format_double(summary.y.false_alarm_fraction[i]) << ','
           << format_double(summary.ratio.false_alarm_fraction[i]) << '\n';
    }
}

void write_summary_csv(const std::string& path,
                       const RunLengthSummary& summary,
                       const ScenarioConfig& cfg) {
    to_file(path,
            [&](std::ostream& os) { write_summary_csv(os, summary, cfg); });
}

std::vector<ParsedChartRow> parse_chart_csv(std::istream& is) {
    std::vector<ParsedChartRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) { // header
            first = false;
            continue;
        }
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw parse_error("chart CSV: bad row");
        ParsedChartRow r;
        r.period = std::atoi(cells[0].c_str());
        parse_double(cells[1], r.estimate);
        parse_double(cells[2], r.lcl);
        parse_double(cells[3], r.ucl);
        parse_double(cells[4], r.beta_hat);
        parse_double(cells[5], r.beta_bar);
        r.phase = cells[6];
        r.signal = cells[7] == "1";
        rows.push_back(r);
    }
    return rows;
}

} // namespace wpc
