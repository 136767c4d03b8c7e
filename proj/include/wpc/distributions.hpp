#pragma once

// Distribution primitives behind every estimator and control limit: the
// Weibull Cdf in its percentile parameterization, the Inverse Weibull prior
// density, the standard Gamma and the symmetric Inverted Beta with their
// quantile inverses. All functions are pure.

namespace wpc {

struct Reliability {
    double value;
    explicit Reliability(double r);
};

struct WeibullParams {
    double scale; // delta
    double shape; // beta
    WeibullParams(double scale, double shape);
};

struct PercentileParams {
    double percentile; // x_R
    double shape;      // beta
    Reliability level;
    PercentileParams(double percentile, double shape, Reliability level);
};

struct InverseWeibullParams {
    double scale; // a
    double shape; // b
    InverseWeibullParams(double scale, double shape);
};

// F(x) = 1 - exp[-ln(1/R) (x/x_R)^beta]
double weibull_cdf(double x, const PercentileParams& p);

// x_R = delta [ln(1/R)]^{1/beta}
double weibull_percentile(const WeibullParams& w, Reliability r);

// pdf = a b (a x)^{-(b+1)} exp[-(a x)^{-b}]
double inverse_weibull_pdf(double x, const InverseWeibullParams& p);

// Inverse Weibull mean Gamma(1 - 1/b)/a, requires b > 1.
double inverse_weibull_mean(const InverseWeibullParams& p);

double log_gamma(double z);

// Regularized lower incomplete gamma P(shape, x).
double std_gamma_cdf(double x, double shape);

// z with P(shape, z) = p.
double std_gamma_quantile(double p, double shape);

// Regularized incomplete beta I_x(a, b).
double reg_beta(double x, double a, double b);

double beta_quantile(double p, double a, double b);

// Symmetric Inverted Beta with both parameters equal to `shape`
// (shape = k*n + 1 in the ratio pivot).
double inverted_beta_pdf(double v, double shape);
double inverted_beta_cdf(double v, double shape);
double inverted_beta_quantile(double p, double shape);

} // namespace wpc
