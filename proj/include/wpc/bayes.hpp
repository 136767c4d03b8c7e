#pragma once

#include <span>
#include <vector>

#include "wpc/distributions.hpp"

// Prior elicitation and cumulative posterior updating for one monitored
// Weibull process. Each ingested subgroup re-estimates the shape parameter
// as a posterior expectation over the current prior interval, refreshes the
// running shape average, recomputes the accumulator A(k) over all data seen
// so far and produces the closed-form percentile estimate; the prior is
// then re-centred on those estimates for the next period.

namespace wpc {

struct PriorSpec {
    double anticipated_percentile; // x_bar_R
    double beta_low;               // beta_1
    double beta_high;              // beta_2
    Reliability level;
    PriorSpec(double anticipated_percentile, double beta_low, double beta_high,
              Reliability level);
};

struct Subgroup {
    std::vector<double> values;
    int period_index = 0; // 1-based
};

// Prior in force for one period: scale a plus the shape interval.
struct PriorParams {
    double scale; // a
    double beta_low;
    double beta_high;
    double b_bar() const { return 0.5 * (beta_low + beta_high); }
};

struct PosteriorState {
    std::vector<double> all_data;      // k*n observations in arrival order
    std::vector<double> log_data;      // ln of all_data
    double sum_log = 0.0;              // running sum of ln x_i
    std::vector<double> beta_hat_history;
    double beta_bar = 0.0;             // mean of beta_hat_history
    PriorParams prior;                 // prior prepared for the NEXT period
    PriorParams used_prior;            // prior that produced the latest estimates
    double accumulator = 0.0;          // A(k) at beta_bar with used_prior.scale
    double percentile_hat = 0.0;       // x_hat_{R,k}
    Reliability level;
    int subgroup_size = 0;

    int period() const { return static_cast<int>(beta_hat_history.size()); }
};

// b_bar = (beta_1 + beta_2)/2; requires beta_1 + beta_2 > 2.
double elicit_b_bar(const PriorSpec& spec);

// a = Gamma(1 - 1/b_bar) / x_bar_R; requires b_bar > 1.
double elicit_a(double anticipated_percentile, double b_bar);

// A = a^{-beta} + ln(1/R) sum x_i^beta over all accumulated data.
double accumulator(std::span<const double> data, double a, double beta,
                   Reliability r);

// Same, over cached logs (hot path).
double accumulator_from_logs(std::span<const double> log_data, double a,
                             double beta, Reliability r);

// Log of the marginal posterior integrand of beta (unnormalized):
//   k n ln(beta) - beta ln(a) + (beta - 1) sum(ln x) - (k n + 1) ln A(k;beta)
double log_beta_integrand(double beta, std::span<const double> log_data,
                          double sum_log, double a, Reliability r);

// Posterior expectation of beta over (beta_low, beta_high), log-domain
// integrands shifted by their maximum, adaptive quadrature.
double beta_posterior_mean(std::span<const double> log_data, double sum_log,
                           const PriorParams& prior, Reliability r);

double update_beta_bar(std::span<const double> history);

// Closed form x_hat = exp[lnG(kn+1-1/bb) - lnG(kn+1)] A^{1/bb}.
double percentile_estimate(double a_k, double beta_bar, int k, int n);

// Next-period prior from the previous period's point estimates:
// interval (beta_hat/2, 1.5 beta_hat), scale from the percentile estimate.
PriorParams recursive_prior_update(double percentile_hat_prev,
                                   double beta_hat_prev);

// Conditional posterior density of x_R given beta (normalized).
double conditional_posterior_pdf(double x_r, double a_k, double beta, int k,
                                 int n);

PosteriorState init_state(const PriorSpec& spec, int subgroup_size);

// Full per-period update; returns the new state, input state untouched.
PosteriorState ingest_subgroup(const PosteriorState& state, const Subgroup& s);

} // namespace wpc
