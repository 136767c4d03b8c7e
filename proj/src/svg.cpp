#include "wpc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr double kWidth = 860, kHeight = 480;
constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 50;

struct Frame {
    double kmin, kmax, vmin, vmax;
    double plot_w, plot_h;

    double x(double k) const {
        return kLeft + (k - kmin) / (kmax - kmin) * plot_w;
    }
    double y(double v) const {
        return kTop + (vmax - v) / (vmax - vmin) * plot_h;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void open_svg(std::ostream& os, const std::string& title, double width) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"16\">" << title
       << "</text>\n";
}

struct Series {
    int period;
    double estimate, lcl, ucl;
    bool signal;
    bool phase1;
};

void draw_chart(std::ostream& os, const std::vector<Series>& pts,
                int phase1_len, const char* y_label) {
    Frame fr;
    fr.kmin = 0.5;
    fr.kmax = pts.back().period + 0.5;
    fr.vmin = pts[0].estimate;
    fr.vmax = pts[0].estimate;
    for (const auto& p : pts) {
        fr.vmin = std::min({fr.vmin, p.estimate, p.lcl});
        fr.vmax = std::max({fr.vmax, p.estimate, p.ucl});
    }
    const double pad = 0.08 * (fr.vmax - fr.vmin) + 1e-12;
    fr.vmin -= pad;
    fr.vmax += pad;
    fr.plot_w = kWidth - kLeft - kRight;
    fr.plot_h = kHeight - kTop - kBottom;

    // axes
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
       << fr.plot_w << "\" height=\"" << fr.plot_h
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = fr.vmin + (fr.vmax - fr.vmin) * i / 5.0;
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fr.y(v) + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << num(v)
           << "</text>\n";
    }
    for (const auto& p : pts) {
        if (p.period % 5 == 0 || p.period == 1)
            os << "<text x=\"" << fr.x(p.period) << "\" y=\""
               << kTop + fr.plot_h + 16
               << "\" font-size=\"11\" text-anchor=\"middle\">" << p.period
               << "</text>\n";
    }
    os << "<text x=\"" << kLeft + fr.plot_w / 2 << "\" y=\"" << kHeight - 12
       << "\" font-size=\"12\" text-anchor=\"middle\">k</text>\n"
       << "<text x=\"16\" y=\"" << kTop + fr.plot_h / 2
       << "\" font-size=\"12\" transform=\"rotate(-90 16 "
       << kTop + fr.plot_h / 2 << ")\" text-anchor=\"middle\">" << y_label
       << "</text>\n";

    // limits: step lines through Phase I, straight frozen lines after
    auto limit_path = [&](auto get) {
        std::ostringstream d;
        for (size_t i = 0; i < pts.size(); ++i)
            d << (i == 0 ? 'M' : 'L') << fr.x(pts[i].period) << ' '
              << fr.y(get(pts[i])) << ' ';
        return d.str();
    };
    os << "<path d=\"" << limit_path([](const Series& s) { return s.lcl; })
       << "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.2\"/>\n";
    os << "<path d=\"" << limit_path([](const Series& s) { return s.ucl; })
       << "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.2\"/>\n";

    // Phase I / II divider
    if (phase1_len >= 1 && phase1_len < pts.back().period)
        os << "<line x1=\"" << fr.x(phase1_len + 0.5) << "\" y1=\"" << kTop
           << "\" x2=\"" << fr.x(phase1_len + 0.5) << "\" y2=\""
           << kTop + fr.plot_h
           << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";

    // estimate polyline + points
    std::ostringstream d;
    for (size_t i = 0; i < pts.size(); ++i)
        d << (i == 0 ? 'M' : 'L') << fr.x(pts[i].period) << ' '
          << fr.y(pts[i].estimate) << ' ';
    os << "<path d=\"" << d.str()
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n";
    for (const auto& p : pts)
        os << "<circle cx=\"" << fr.x(p.period) << "\" cy=\""
           << fr.y(p.estimate) << "\" r=\"3.5\" fill=\""
           << (p.signal ? "red" : "#1f77b4") << "\"/>\n";
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open plot file: " + path);
    out << body;
}

std::vector<Series> from_points(const std::vector<ChartPoint>& points) {
    std::vector<Series> pts;
    for (const auto& p : points)
        pts.push_back({p.period, p.estimate, p.lcl, p.ucl, p.signal,
                       p.phase == Phase::phase1});
    return pts;
}

} // namespace

void render_chart_svg(const std::string& path, const ChartRun& run,
                      const std::string& title) {
    if (run.points.empty()) throw invalid_parameter("render: empty chart");
    std::ostringstream os;
    open_svg(os, title, kWidth);
    draw_chart(os, from_points(run.points), run.config.phase1_len,
               "percentile estimate");
    os << "</svg>\n";
    write_file(path, os.str());
}

void render_beta_svg(const std::string& path, const ChartRun& run,
                     const std::string& title) {
    if (run.beta_points.empty()) throw invalid_parameter("render: empty chart");
    std::vector<Series> pts;
    for (const auto& p : run.beta_points)
        pts.push_back({p.period, p.beta_hat, p.lcl, p.ucl, p.signal,
                       p.period <= run.config.phase1_len});
    std::ostringstream os;
    open_svg(os, title, kWidth);
    draw_chart(os, pts, run.config.phase1_len, "beta estimate");
    os << "</svg>\n";
    write_file(path, os.str());
}

void render_ratio_svg(const std::string& path, const RatioRun& run,
                      const std::string& title) {
    if (run.ratio_points.empty()) throw invalid_parameter("render: empty chart");
    std::ostringstream os;
    const double inset_w = 220;
    open_svg(os, title, kWidth + inset_w);
    draw_chart(os, from_points(run.ratio_points), run.x_run.config.phase1_len,
               "percentile ratio");

    // Inset: ratio densities at k = 0 (prior scales) and at the end of
    // Phase I, over u in a range covering both curves.
    const int phase1 = run.x_run.config.phase1_len;
    const int n = run.x_run.config.subgroup_size;
    const double b_bar0 = 0.5 * (elicit_b_bar(run.x_run.config.prior) +
                                 elicit_b_bar(run.y_run.config.prior));
    const double ax = elicit_a(run.x_run.config.prior.anticipated_percentile,
                               elicit_b_bar(run.x_run.config.prior));
    const double ay = elicit_a(run.y_run.config.prior.anticipated_percentile,
                               elicit_b_bar(run.y_run.config.prior));
    const double c0 = std::pow(ax / ay, b_bar0);

    const bool have_end = run.phase1_end_context.has_value();
    double c1 = c0, b_bar1 = b_bar0;
    if (have_end) {
        c1 = run.phase1_end_context->c_k();
        b_bar1 = run.phase1_end_context->beta_bar;
    }
    const int k1 = have_end ? phase1 : 0;

    const double u_lo = 0.3, u_hi = 2.0;
    const int steps = 160;
    auto curve = [&](double beta, double c, int k, const char* color) {
        std::vector<double> ys(steps + 1);
        double ymax = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const double u = u_lo + (u_hi - u_lo) * i / steps;
            ys[i] = ratio_pdf(u, beta, c, k, k == 0 ? 1 : n);
            ymax = std::max(ymax, ys[i]);
        }
        std::ostringstream d;
        for (int i = 0; i <= steps; ++i) {
            const double u = u_lo + (u_hi - u_lo) * i / steps;
            const double px = kWidth + 10 + (u - u_lo) / (u_hi - u_lo) * (inset_w - 30);
            const double py = kTop + 160 - ys[i] / (ymax + 1e-300) * 140;
            d << (i == 0 ? 'M' : 'L') << px << ' ' << py << ' ';
        }
        os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.2\"/>\n";
    };
    curve(b_bar0, c0, 0, "#999");
    if (have_end) curve(b_bar1, c1, k1, "#1f77b4");
    os << "<text x=\"" << kWidth + 10 << "\" y=\"" << kTop + 180
       << "\" font-size=\"11\">pdf of u at k=0 (grey), k=" << k1
       << " (blue), normalized</text>\n";
    os << "</svg>\n";
    write_file(path, os.str());
}

} // namespace wpc
