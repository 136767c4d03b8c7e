#include "wpc/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wpc/errors.hpp"
#include "wpc/kernels.hpp"
#include "wpc/quadrature.hpp"

namespace wpc {

PriorSpec::PriorSpec(double anticipated_percentile_, double beta_low_,
                     double beta_high_, Reliability level_)
    : anticipated_percentile(anticipated_percentile_),
      beta_low(beta_low_),
      beta_high(beta_high_),
      level(level_) {
    if (!(anticipated_percentile > 0.0))
        throw invalid_prior("anticipated percentile must be positive");
    if (!(beta_low > 0.0) || !(beta_low < beta_high))
        throw invalid_prior("shape interval must satisfy 0 < beta_low < beta_high");
    if (!(beta_low + beta_high > 2.0))
        throw invalid_prior("shape interval must satisfy beta_low + beta_high > 2");
}

double elicit_b_bar(const PriorSpec& spec) {
    // PriorSpec construction already enforces beta_low + beta_high > 2.
    return 0.5 * (spec.beta_low + spec.beta_high);
}

double elicit_a(double anticipated_percentile, double b_bar) {
    if (!(b_bar > 1.0)) throw invalid_prior("elicit_a requires b_bar > 1");
    if (!(anticipated_percentile > 0.0))
        throw invalid_prior("anticipated percentile must be positive");
    return std::exp(log_gamma(1.0 - 1.0 / b_bar)) / anticipated_percentile;
}

double accumulator(std::span<const double> data, double a, double beta,
                   Reliability r) {
    if (!(a > 0.0) || !(beta > 0.0))
        throw invalid_parameter("accumulator: a and beta must be positive");
    double s = 0.0;
    for (double x : data) {
        if (!(x > 0.0))
            throw invalid_parameter("accumulator: data must be positive");
        s += std::pow(x, beta);
    }
    return std::pow(a, -beta) + std::log(1.0 / r.value) * s;
}

double accumulator_from_logs(std::span<const double> log_data, double a,
                             double beta, Reliability r) {
    const double s = kernels::sum_exp_scaled(beta, log_data);
    return std::exp(-beta * std::log(a)) + std::log(1.0 / r.value) * s;
}

double log_beta_integrand(double beta, std::span<const double> log_data,
                          double sum_log, double a, Reliability r) {
    const double kn = static_cast<double>(log_data.size());
    const double a_of_beta = accumulator_from_logs(log_data, a, beta, r);
    return kn * std::log(beta) - beta * std::log(a) + (beta - 1.0) * sum_log -
           (kn + 1.0) * std::log(a_of_beta);
}

double beta_posterior_mean(std::span<const double> log_data, double sum_log,
                           const PriorParams& prior, Reliability r) {
    const double b1 = prior.beta_low, b2 = prior.beta_high;
    if (!(b1 > 0.0) || !(b1 < b2))
        throw invalid_prior("beta_posterior_mean: bad shape interval");

    auto logf = [&](double beta) {
        return log_beta_integrand(beta, log_data, sum_log, prior.scale, r);
    };

    // Shift by the maximum before exponentiating.
    double lmax = -std::numeric_limits<double>::infinity();
    constexpr int scan = 128;
    for (int i = 0; i <= scan; ++i) {
        const double beta = b1 + (b2 - b1) * i / scan;
        lmax = std::max(lmax, logf(beta));
    }

    const double denom = integrate(
        [&](double beta) { return std::exp(logf(beta) - lmax); }, b1, b2, 1e-9);
    const double numer = integrate(
        [&](double beta) { return beta * std::exp(logf(beta) - lmax); }, b1, b2,
        1e-9);
    if (!(denom > 0.0))
        throw quadrature_failure("beta posterior has vanishing mass");
    return numer / denom;
}

double update_beta_bar(std::span<const double> history) {
    if (history.empty())
        throw invalid_parameter("update_beta_bar: empty history");
    const double s = std::accumulate(history.begin(), history.end(), 0.0);
    return s / static_cast<double>(history.size());
}

double percentile_estimate(double a_k, double beta_bar, int k, int n) {
    if (!(a_k > 0.0) || !(beta_bar > 0.0))
        throw invalid_parameter("percentile_estimate: inputs must be positive");
    const double kn1 = static_cast<double>(k) * n + 1.0;
    if (!(kn1 > 1.0 / beta_bar))
        throw invalid_parameter("percentile_estimate: k*n + 1 <= 1/beta_bar");
    return std::exp(log_gamma(kn1 - 1.0 / beta_bar) - log_gamma(kn1)) *
           std::pow(a_k, 1.0 / beta_bar);
}

PriorParams recursive_prior_update(double percentile_hat_prev,
                                   double beta_hat_prev) {
    if (!(percentile_hat_prev > 0.0))
        throw invalid_prior("recursive update: percentile estimate must be positive");
    if (!(beta_hat_prev > 1.0))
        throw invalid_prior("recursive update: beta estimate <= 1 breaks the prior mean");
    PriorParams p;
    p.beta_low = 0.5 * beta_hat_prev;
    p.beta_high = 1.5 * beta_hat_prev;
    // Symmetric interval, so b_bar == beta_hat_prev.
    p.scale = elicit_a(percentile_hat_prev, p.b_bar());
    return p;
}

double conditional_posterior_pdf(double x_r, double a_k, double beta, int k,
                                 int n) {
    if (!(x_r > 0.0) || !(a_k > 0.0) || !(beta > 0.0))
        throw invalid_parameter("conditional_posterior_pdf: inputs must be positive");
    const double kn1 = static_cast<double>(k) * n + 1.0;
    const double lx = std::log(x_r);
    return std::exp(std::log(beta) + (-beta * kn1 - 1.0) * lx +
                    kn1 * std::log(a_k) - std::exp(-beta * lx) * a_k -
                    log_gamma(kn1));
}

PosteriorState init_state(const PriorSpec& spec, int subgroup_size) {
    if (subgroup_size < 1)
        throw invalid_parameter("subgroup size must be >= 1");
    PosteriorState st{.all_data = {}, .log_data = {}, .sum_log = 0.0,
                      .beta_hat_history = {}, .beta_bar = 0.0, .prior = {},
                      .used_prior = {}, .accumulator = 0.0,
                      .percentile_hat = 0.0, .level = spec.level,
                      .subgroup_size = 0};
    const double b_bar = elicit_b_bar(spec);
    st.prior.beta_low = spec.beta_low;
    st.prior.beta_high = spec.beta_high;
    st.prior.scale = elicit_a(spec.anticipated_percentile, b_bar);
    st.used_prior = st.prior;
    st.subgroup_size = subgroup_size;
    return st;
}

PosteriorState ingest_subgroup(const PosteriorState& state, const Subgroup& s) {
    if (s.period_index != state.period() + 1)
        throw invalid_parameter("ingest_subgroup: out-of-order subgroup");
    if (static_cast<int>(s.values.size()) != state.subgroup_size)
        throw invalid_parameter("ingest_subgroup: subgroup size mismatch");
    for (double x : s.values)
        if (!(x > 0.0))
            throw invalid_parameter("ingest_subgroup: nonpositive observation");

    PosteriorState st = state;
    for (double x : s.values) {
        st.all_data.push_back(x);
        st.log_data.push_back(std::log(x));
        st.sum_log += st.log_data.back();
    }
    st.used_prior = st.prior;

    const double beta_hat =
        beta_posterior_mean(st.log_data, st.sum_log, st.used_prior, st.level);
    st.beta_hat_history.push_back(beta_hat);
    st.beta_bar = update_beta_bar(st.beta_hat_history);
    st.accumulator = accumulator_from_logs(st.log_data, st.used_prior.scale,
                                           st.beta_bar, st.level);
    st.percentile_hat = percentile_estimate(st.accumulator, st.beta_bar,
                                            st.period(), st.subgroup_size);
    st.prior = recursive_prior_update(st.percentile_hat, beta_hat);
    return st;
}

} // namespace wpc
