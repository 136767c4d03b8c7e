#include "wpc/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpc/distributions.hpp"
#include "wpc/errors.hpp"
#include "wpc/quadrature.hpp"

namespace wpc {

LimitPair percentile_limits(double a_k, double beta_bar, int k, int n,
                            double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw invalid_parameter("percentile_limits: alpha must lie in (0,1)");
    if (!(a_k > 0.0) || !(beta_bar > 0.0))
        throw invalid_parameter("percentile_limits: invalid state");
    const double shape = static_cast<double>(k) * n + 1.0;
    const double z_lo = std_gamma_quantile(0.5 * alpha, shape);
    const double z_hi = std_gamma_quantile(1.0 - 0.5 * alpha, shape);
    const double scale = std::pow(a_k, 1.0 / beta_bar);
    return {std::pow(z_hi, -1.0 / beta_bar) * scale,
            std::pow(z_lo, -1.0 / beta_bar) * scale, alpha, k};
}

LimitPair ratio_limits(const RatioContext& ctx, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw invalid_parameter("ratio_limits: alpha must lie in (0,1)");
    if (!(ctx.a_k > 0.0) || !(ctx.b_k > 0.0) || !(ctx.beta_bar > 0.0))
        throw invalid_parameter("ratio_limits: invalid context");
    const double shape = static_cast<double>(ctx.k) * ctx.n + 1.0;
    const double v_lo = inverted_beta_quantile(0.5 * alpha, shape);
    const double v_hi = inverted_beta_quantile(1.0 - 0.5 * alpha, shape);
    const double c = ctx.c_k();
    return {std::pow(v_lo / c, 1.0 / ctx.beta_bar),
            std::pow(v_hi / c, 1.0 / ctx.beta_bar), alpha, ctx.k};
}

LimitPair prior_ratio_limits(double a_x, double a_y, double beta_bar,
                             double alpha) {
    if (!(a_x > 0.0) || !(a_y > 0.0))
        throw invalid_parameter("prior_ratio_limits: prior scales must be positive");
    RatioContext ctx{std::pow(a_x, -beta_bar), std::pow(a_y, -beta_bar),
                     beta_bar, 0, 1};
    return ratio_limits(ctx, alpha);
}

double ratio_pdf(double u, double beta_bar, double c_k, int k, int n) {
    if (!(u > 0.0) || !(beta_bar > 0.0) || !(c_k > 0.0))
        throw invalid_parameter("ratio_pdf: inputs must be positive");
    const double kn1 = static_cast<double>(k) * n + 1.0;
    const double lognorm = log_gamma(2.0 * kn1) - 2.0 * log_gamma(kn1);
    const double lu = std::log(u);
    return std::exp(lognorm + std::log(beta_bar) + (beta_bar * kn1 - 1.0) * lu +
                    kn1 * std::log(c_k) -
                    2.0 * kn1 * std::log1p(std::exp(beta_bar * lu) * c_k));
}

LimitPair beta_chart_bands(const PosteriorState& state, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw invalid_parameter("beta_chart_bands: alpha must lie in (0,1)");
    if (state.period() < 1)
        throw invalid_parameter("beta_chart_bands: no data ingested yet");

    const double b1 = state.used_prior.beta_low;
    const double b2 = state.used_prior.beta_high;

    auto logf = [&](double beta) {
        return log_beta_integrand(beta, state.log_data, state.sum_log,
                                  state.used_prior.scale, state.level);
    };
    double lmax = -std::numeric_limits<double>::infinity();
    constexpr int scan = 128;
    for (int i = 0; i <= scan; ++i)
        lmax = std::max(lmax, logf(b1 + (b2 - b1) * i / scan));
    auto f = [&](double beta) { return std::exp(logf(beta) - lmax); };

    const double total = integrate(f, b1, b2, 1e-9);
    if (!(total > 0.0))
        throw quadrature_failure("beta_chart_bands: vanishing posterior mass");

    auto quantile = [&](double p) {
        double lo = b1, hi = b2;
        // CDF is computed afresh per probe; bisection to interval width eps.
        for (int it = 0; it < 80 && (hi - lo) > 1e-12 * (b2 - b1); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double mass = integrate(f, b1, mid, 1e-9, 1e-14 * total);
            (mass / total < p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    return {quantile(0.5 * alpha), quantile(1.0 - 0.5 * alpha), alpha,
            state.period()};
}

} // namespace wpc
