#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpc/bayes.hpp"
#include "wpc/errors.hpp"
#include "wpc/quadrature.hpp"

using namespace wpc;

namespace {

const std::vector<double> first_subgroup = {3.7, 3.3, 4.9, 4.3};

PosteriorState example_state_after(int periods,
                                   const std::vector<std::vector<double>>& data,
                                   double anticipated = 2.9) {
    PriorSpec spec(anticipated, 2.5, 7.5, Reliability{0.95});
    PosteriorState st = init_state(spec, static_cast<int>(data[0].size()));
    for (int k = 0; k < periods; ++k)
        st = ingest_subgroup(st, Subgroup{data[k], k + 1});
    return st;
}

// Composite-Simpson oracle for the posterior mean of beta, independent of
// the adaptive quadrature used by the library.
double simpson_beta_mean(const std::vector<double>& data, double a, double b1,
                         double b2, double r) {
    std::vector<double> lx;
    double sl = 0.0;
    for (double x : data) {
        lx.push_back(std::log(x));
        sl += lx.back();
    }
    const double kn = static_cast<double>(data.size());
    auto logf = [&](double beta) {
        double acc = std::pow(a, -beta);
        for (double l : lx) acc += std::log(1.0 / r) * std::exp(beta * l);
        return kn * std::log(beta) - beta * std::log(a) + (beta - 1.0) * sl -
               (kn + 1.0) * std::log(acc);
    };
    double lmax = logf(b1);
    const int N = 40000;
    const double h = (b2 - b1) / N;
    for (int i = 1; i <= N; ++i) lmax = std::max(lmax, logf(b1 + i * h));
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double beta = b1 + i * h;
        const double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double f = w * std::exp(logf(beta) - lmax);
        den += f;
        num += beta * f;
    }
    return num / den;
}

} // namespace

TEST_CASE("prior elicitation") {
    PriorSpec spec(2.9, 2.5, 7.5, Reliability{0.95});
    CHECK(elicit_b_bar(spec) == doctest::Approx(5.0).epsilon(1e-15));
    // a = Gamma(1 - 1/5) / 2.9
    const double a = elicit_a(2.9, 5.0);
    CHECK(a == doctest::Approx(std::exp(std::lgamma(0.8)) / 2.9).epsilon(1e-14));
    CHECK(a == doctest::Approx(0.40145852197424253).epsilon(1e-13));

    CHECK_THROWS_AS(PriorSpec(2.9, 0.4, 1.5, Reliability{0.95}), invalid_prior);
    CHECK_THROWS_AS(PriorSpec(-1.0, 2.5, 7.5, Reliability{0.95}), invalid_prior);
    CHECK_THROWS_AS(PriorSpec(2.9, 7.5, 2.5, Reliability{0.95}), invalid_prior);
    CHECK_THROWS_AS(elicit_a(2.9, 1.0), invalid_prior);
}

TEST_CASE("accumulator basics") {
    const Reliability r{0.95};
    std::vector<double> one = {2.0};
    // a = 1, beta = 1: A = 1 + ln(1/R) * 2
    CHECK(accumulator(one, 1.0, 1.0, r) ==
          doctest::Approx(1.0 + std::log(1.0 / 0.95) * 2.0).epsilon(1e-15));

    std::vector<double> logs;
    for (double x : first_subgroup) logs.push_back(std::log(x));
    for (double beta : {1.3, 5.0, 6.6329}) {
        CHECK(accumulator_from_logs(logs, 0.4014585, beta, r) ==
              doctest::Approx(accumulator(first_subgroup, 0.4014585, beta, r))
                  .epsilon(1e-13));
    }

    CHECK_THROWS_AS(accumulator(one, -1.0, 2.0, r), invalid_parameter);
    std::vector<double> bad = {1.0, 0.0};
    CHECK_THROWS_AS(accumulator(bad, 1.0, 2.0, r), invalid_parameter);
}

TEST_CASE("beta posterior mean against a dense Simpson oracle") {
    const double a = elicit_a(2.9, 5.0);
    std::vector<double> logs;
    double sl = 0.0;
    for (double x : first_subgroup) {
        logs.push_back(std::log(x));
        sl += logs.back();
    }
    PriorParams prior{a, 2.5, 7.5};
    const double got = beta_posterior_mean(logs, sl, prior, Reliability{0.95});
    const double oracle = simpson_beta_mean(first_subgroup, a, 2.5, 7.5, 0.95);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("beta posterior mean on a degenerate interval") {
    std::vector<double> logs = {std::log(3.0), std::log(4.0)};
    PriorParams prior{0.5, 3.0, 3.0001};
    const double got =
        beta_posterior_mean(logs, logs[0] + logs[1], prior, Reliability{0.95});
    CHECK(got == doctest::Approx(3.00005).epsilon(1e-6));
}

TEST_CASE("percentile estimate equals the quadrature expectation") {
    const double a_k = 37.2, beta_bar = 5.0;
    const int k = 2, n = 4;
    const double closed = percentile_estimate(a_k, beta_bar, k, n);
    const double mean = integrate_half_line([&](double x) {
        return x * conditional_posterior_pdf(x, a_k, beta_bar, k, n);
    });
    CHECK(closed == doctest::Approx(mean).epsilon(1e-8));
}

TEST_CASE("percentile estimate limit for a huge shape") {
    // Gamma(kn + 1 - 1/b)/Gamma(kn + 1) -> 1 and A^{1/b} -> 1.
    CHECK(percentile_estimate(37.2, 1e8, 2, 4) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(percentile_estimate(-1.0, 5.0, 2, 4), invalid_parameter);
}

TEST_CASE("recursive prior update") {
    const PriorParams p = recursive_prior_update(2.9, 5.0);
    CHECK(p.beta_low == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(p.beta_high == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(p.b_bar() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(p.scale == doctest::Approx(0.40145852197424253).epsilon(1e-13));

    CHECK_THROWS_AS(recursive_prior_update(2.9, 0.9), invalid_prior);
    CHECK_THROWS_AS(recursive_prior_update(2.9, 1.0), invalid_prior);
    CHECK_THROWS_AS(recursive_prior_update(0.0, 5.0), invalid_prior);
}

TEST_CASE("first subgroup of the first worked example, pinned") {
    const PosteriorState st = example_state_after(1, {first_subgroup});
    CHECK(st.period() == 1);
    CHECK(st.sum_log == doctest::Approx(std::log(3.7 * 3.3 * 4.9 * 4.3)).epsilon(1e-14));
    // Values pinned after verification against the Simpson oracle above.
    CHECK(st.beta_hat_history[0] == doctest::Approx(5.7934506127519452).epsilon(1e-12));
    CHECK(st.beta_bar == doctest::Approx(5.7934506127519452).epsilon(1e-12));
    CHECK(st.accumulator == doctest::Approx(1101.2360676848498).epsilon(1e-12));
    CHECK(st.percentile_hat == doctest::Approx(2.5918049749174599).epsilon(1e-12));
    // Rotated prior for the next period is centred on beta_hat.
    CHECK(st.prior.b_bar() == doctest::Approx(st.beta_hat_history[0]).epsilon(1e-14));
    CHECK(st.used_prior.scale == doctest::Approx(0.40145852197424253).epsilon(1e-13));
}

TEST_CASE("ingest bookkeeping and validation") {
    PriorSpec spec(2.9, 2.5, 7.5, Reliability{0.95});
    PosteriorState st = init_state(spec, 4);
    CHECK(st.period() == 0);
    CHECK_THROWS_AS(ingest_subgroup(st, Subgroup{{1.0, 2.0, 3.0, 4.0}, 2}),
                    invalid_parameter);
    CHECK_THROWS_AS(ingest_subgroup(st, Subgroup{{1.0, 2.0}, 1}),
                    invalid_parameter);
    CHECK_THROWS_AS(ingest_subgroup(st, Subgroup{{1.0, -2.0, 3.0, 4.0}, 1}),
                    invalid_parameter);

    st = ingest_subgroup(st, Subgroup{first_subgroup, 1});
    st = ingest_subgroup(st, Subgroup{{3.9, 4.1, 3.5, 4.4}, 2});
    CHECK(st.period() == 2);
    CHECK(st.all_data.size() == 8);
    CHECK(st.beta_hat_history.size() == 2);
    CHECK(st.beta_bar ==
          doctest::Approx(0.5 * (st.beta_hat_history[0] + st.beta_hat_history[1]))
              .epsilon(1e-15));
}

TEST_CASE("accumulator grows with data") {
    std::vector<std::vector<double>> data = {
        first_subgroup, {3.9, 4.1, 3.5, 4.4}, {4.0, 3.8, 4.2, 3.6}};
    double prev = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const PosteriorState st = example_state_after(k, data);
        // A(k) adds ln(1/R) sum x^beta terms every period; the a^{-beta}
        // part moves too, but the data term dominates here.
        CHECK(st.accumulator > prev);
        prev = st.accumulator;
    }
}

TEST_CASE("scale equivariance of the whole recursion") {
    std::vector<std::vector<double>> data = {first_subgroup,
                                             {3.9, 4.1, 3.5, 4.4}};
    std::vector<std::vector<double>> scaled = data;
    for (auto& row : scaled)
        for (double& x : row) x *= 2.0;

    const PosteriorState a = example_state_after(2, data, 2.9);
    const PosteriorState b = example_state_after(2, scaled, 5.8);
    CHECK(b.beta_hat_history[0] ==
          doctest::Approx(a.beta_hat_history[0]).epsilon(1e-9));
    CHECK(b.beta_hat_history[1] ==
          doctest::Approx(a.beta_hat_history[1]).epsilon(1e-9));
    CHECK(b.percentile_hat == doctest::Approx(2.0 * a.percentile_hat).epsilon(1e-9));
}

TEST_CASE("recursion is deterministic") {
    std::vector<std::vector<double>> data = {first_subgroup,
                                             {3.9, 4.1, 3.5, 4.4}};
    const PosteriorState a = example_state_after(2, data);
    const PosteriorState b = example_state_after(2, data);
    CHECK(a.percentile_hat == b.percentile_hat);
    CHECK(a.beta_bar == b.beta_bar);
    CHECK(a.accumulator == b.accumulator);
}

TEST_CASE("joint posterior is normalized at k = 1 (2-D quadrature)") {
    const PosteriorState st = example_state_after(1, {first_subgroup});
    const PriorParams& prior = st.used_prior;
    const Reliability r = st.level;

    // Marginal weight of beta, normalized over the prior interval.
    auto logw = [&](double beta) {
        return log_beta_integrand(beta, st.log_data, st.sum_log, prior.scale, r);
    };
    double lmax = logw(prior.beta_low);
    for (int i = 1; i <= 128; ++i)
        lmax = std::max(lmax, logw(prior.beta_low +
                                   (prior.beta_high - prior.beta_low) * i / 128.0));
    const double z = integrate(
        [&](double beta) { return std::exp(logw(beta) - lmax); },
        prior.beta_low, prior.beta_high, 1e-10);

    // Joint pdf = conditional(x_R | beta) * marginal(beta); the inner
    // integral runs over x_R in (0, inf) for each beta node.
    const double mass = integrate(
        [&](double beta) {
            const double a_b = accumulator_from_logs(st.log_data, prior.scale,
                                                     beta, r);
            const double inner = integrate_half_line([&](double x) {
                return conditional_posterior_pdf(x, a_b, beta, 1, 4);
            }, 1e-8);
            return inner * std::exp(logw(beta) - lmax) / z;
        },
        prior.beta_low, prior.beta_high, 1e-8);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("long-run consistency on synthetic data") {
    // 50 subgroups of 4 from a known shape; the shape estimate must settle
    // near the truth and the percentile estimate near the true percentile.
    const double delta = 4.5, beta = 5.0;
    PriorSpec spec(3.5, 2.5, 7.5, Reliability{0.95});
    PosteriorState st = init_state(spec, 4);
    std::uint64_t s = 987654321u;
    auto next_u = [&s]() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return ((z >> 12) + 0.5) * 0x1.0p-52;
    };
    for (int k = 1; k <= 50; ++k) {
        std::vector<double> row(4);
        for (double& x : row)
            x = delta * std::pow(-std::log(next_u()), 1.0 / beta);
        st = ingest_subgroup(st, Subgroup{row, k});
    }
    CHECK(st.beta_hat_history.back() > 4.0);
    CHECK(st.beta_hat_history.back() < 6.0);
    const double true_pct = delta * std::pow(std::log(1.0 / 0.95), 1.0 / beta);
    CHECK(st.percentile_hat == doctest::Approx(true_pct).epsilon(0.08));
}
