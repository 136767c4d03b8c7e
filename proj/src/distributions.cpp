#include "wpc/distributions.hpp"

#include <cmath>
#include <limits>

#include "wpc/errors.hpp"

namespace wpc {

Reliability::Reliability(double r) : value(r) {
    if (!(r > 0.0 && r < 1.0))
        throw invalid_parameter("reliability must lie in (0,1)");
}

WeibullParams::WeibullParams(double scale_, double shape_)
    : scale(scale_), shape(shape_) {
    if (!(scale > 0.0) || !(shape > 0.0))
        throw invalid_parameter("Weibull parameters must be positive");
}

PercentileParams::PercentileParams(double percentile_, double shape_,
                                   Reliability level_)
    : percentile(percentile_), shape(shape_), level(level_) {
    if (!(percentile > 0.0) || !(shape > 0.0))
        throw invalid_parameter("percentile parameters must be positive");
}

InverseWeibullParams::InverseWeibullParams(double scale_, double shape_)
    : scale(scale_), shape(shape_) {
    if (!(scale > 0.0) || !(shape > 0.0))
        throw invalid_parameter("Inverse Weibull parameters must be positive");
}

double weibull_cdf(double x, const PercentileParams& p) {
    if (x < 0.0) throw invalid_parameter("weibull_cdf: x must be >= 0");
    const double lr = std::log(1.0 / p.level.value);
    return -std::expm1(-lr * std::pow(x / p.percentile, p.shape));
}

double weibull_percentile(const WeibullParams& w, Reliability r) {
    return w.scale * std::pow(std::log(1.0 / r.value), 1.0 / w.shape);
}

double inverse_weibull_pdf(double x, const InverseWeibullParams& p) {
    if (!(x > 0.0)) throw invalid_parameter("inverse_weibull_pdf: x must be > 0");
    const double ax = p.scale * x;
    return p.scale * p.shape * std::pow(ax, -(p.shape + 1.0)) *
           std::exp(-std::pow(ax, -p.shape));
}

double inverse_weibull_mean(const InverseWeibullParams& p) {
    if (!(p.shape > 1.0))
        throw invalid_parameter("Inverse Weibull mean requires shape > 1");
    return std::exp(log_gamma(1.0 - 1.0 / p.shape)) / p.scale;
}

double log_gamma(double z) {
    if (!(z > 0.0)) throw invalid_parameter("log_gamma: argument must be > 0");
    return std::lgamma(z);
}

namespace {

// P(a, x) by series for x < a + 1, by Lentz continued fraction of Q(a, x)
// otherwise (Numerical Recipes scheme).
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw no_convergence("gamma_p: series did not converge");
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw no_convergence("gamma_q: continued fraction did not converge");
}

} // namespace

double std_gamma_cdf(double x, double shape) {
    if (!(shape > 0.0)) throw invalid_parameter("std_gamma_cdf: shape must be > 0");
    if (x <= 0.0) return 0.0;
    if (x < shape + 1.0) return gamma_p_series(shape, x);
    return 1.0 - gamma_q_cf(shape, x);
}

double std_gamma_quantile(double p, double shape) {
    if (!(p > 0.0 && p < 1.0))
        throw invalid_parameter("std_gamma_quantile: p must lie in (0,1)");
    if (!(shape > 0.0))
        throw invalid_parameter("std_gamma_quantile: shape must be > 0");

    // Wilson-Hilferty starting point, then safeguarded Newton on P(a,z) - p.
    double z;
    {
        // inverse normal via Acklam-style rational fit is overkill here; a
        // crude logistic start is enough since bisection brackets anyway.
        const double t = std::sqrt(-2.0 * std::log(p < 0.5 ? p : 1.0 - p));
        double xn = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
        if (p < 0.5) xn = -xn;
        const double g = 1.0 - 1.0 / (9.0 * shape) + xn / (3.0 * std::sqrt(shape));
        z = shape * g * g * g;
        if (!(z > 0.0)) z = shape * std::exp((std::log(p) + std::lgamma(shape + 1.0)) / shape);
        if (!(z > 0.0) || !std::isfinite(z)) z = shape;
    }

    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    const double lg = std::lgamma(shape);
    for (int it = 0; it < 200; ++it) {
        const double f = std_gamma_cdf(z, shape) - p;
        if (f > 0.0) hi = z; else lo = z;
        if (std::abs(f) < 1e-16 * std::max(p, 1.0 - p)) break;
        const double logpdf = (shape - 1.0) * std::log(z) - z - lg;
        double step = f * std::exp(-logpdf);
        double zn = z - step;
        if (!(zn > lo && zn < hi)) {
            zn = std::isfinite(hi) ? 0.5 * (lo + hi) : z * 2.0;
        }
        if (zn == z) break;
        z = zn;
        if (std::isfinite(hi) && (hi - lo) < 1e-16 * hi) break;
    }
    return z;
}

namespace {

double beta_cf(double x, double a, double b) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 1000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17) return h;
    }
    throw no_convergence("reg_beta: continued fraction did not converge");
}

} // namespace

double reg_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw invalid_parameter("reg_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double beta_quantile(double p, double a, double b) {
    if (!(p > 0.0 && p < 1.0))
        throw invalid_parameter("beta_quantile: p must lie in (0,1)");
    double lo = 0.0, hi = 1.0;
    double x = a / (a + b);
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    for (int it = 0; it < 300; ++it) {
        const double f = reg_beta(x, a, b) - p;
        if (f > 0.0) hi = x; else lo = x;
        if (std::abs(f) < 1e-16 * std::max(p, 1.0 - p)) break;
        const double logpdf = (a - 1.0) * std::log(x) +
                              (b - 1.0) * std::log1p(-x) - lbeta;
        double xn = x - f * std::exp(-logpdf);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) break;
        x = xn;
        if (hi - lo < 1e-17) break;
    }
    return x;
}

double inverted_beta_pdf(double v, double shape) {
    if (!(v > 0.0)) throw invalid_parameter("inverted_beta_pdf: v must be > 0");
    if (!(shape > 0.0))
        throw invalid_parameter("inverted_beta_pdf: shape must be > 0");
    const double lognorm = std::lgamma(2.0 * shape) - 2.0 * std::lgamma(shape);
    return std::exp(lognorm + (shape - 1.0) * std::log(v) -
                    2.0 * shape * std::log1p(v));
}

double inverted_beta_cdf(double v, double shape) {
    if (v <= 0.0) return 0.0;
    // v/(1+v) ~ Beta(shape, shape)
    return reg_beta(v / (1.0 + v), shape, shape);
}

double inverted_beta_quantile(double p, double shape) {
    const double q = beta_quantile(p, shape, shape);
    return q / (1.0 - q);
}

} // namespace wpc
