#pragma once

#include "wpc/bayes.hpp"

// Control-limit computation. Percentile-chart limits come from the standard
// Gamma pivot z = x_R^{-beta_bar} A(k); ratio-chart limits from the Inverted
// Beta pivot v = u^{beta_bar} C(k). The beta-chart bands are central
// quantile bands of the marginal posterior of the shape parameter.

namespace wpc {

struct LimitPair {
    double lcl;
    double ucl;
    double alpha;
    int period; // k at which the pair was computed
};

struct RatioContext {
    double a_k;      // accumulator of process x
    double b_k;      // accumulator of process y
    double beta_bar; // pooled (beta_bar_x + beta_bar_y)/2
    int k;
    int n;
    double c_k() const { return b_k / a_k; }
};

// x_R = z^{-1/beta_bar} A^{1/beta_bar} is decreasing in z, so the upper z
// quantile gives the LCL and the lower one the UCL.
LimitPair percentile_limits(double a_k, double beta_bar, int k, int n,
                            double alpha);

// u = (v/C)^{1/beta_bar} is increasing in v.
LimitPair ratio_limits(const RatioContext& ctx, double alpha);

// k = 0 case: shape k*n + 1 = 1, accumulators reduce to the prior scales.
LimitPair prior_ratio_limits(double a_x, double a_y, double beta_bar,
                             double alpha);

// Density of the percentile ratio u given the accumulators (normalized).
double ratio_pdf(double u, double beta_bar, double c_k, int k, int n);

// Central (alpha/2, 1 - alpha/2) quantiles of the marginal posterior of
// beta over the interval the latest estimate was computed on.
LimitPair beta_chart_bands(const PosteriorState& state, double alpha);

} // namespace wpc
