#include "wpc/sim.hpp"

#include <algorithm>
#include <cmath>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

double RngStream::uniform(std::uint64_t index) const {
    std::uint64_t z = mix64(seed + kGolden);
    z = mix64(z ^ (replicate * kGolden + 1));
    z = mix64(z ^ (period * kGolden + 2));
    z = mix64(z ^ (index * kGolden + 3));
    // 52 random bits plus a half-ulp offset keeps U strictly inside (0,1).
    return (static_cast<double>(z >> 12) + 0.5) * 0x1p-52;
}

std::vector<double> weibull_sample(const WeibullParams& params, int count,
                                   const RngStream& stream) {
    if (count < 0) throw invalid_parameter("weibull_sample: negative count");
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double u = stream.uniform(static_cast<std::uint64_t>(i));
        out[i] = params.scale * std::pow(-std::log(u), 1.0 / params.shape);
    }
    return out;
}

namespace {

struct ReplicateResult {
    int first_signal_x = 0;
    int first_signal_y = 0;
    int first_signal_ratio = 0;
    std::vector<bool> signal_x, signal_y, signal_ratio; // Phase II periods
    bool errored = false;
};

ReplicateResult run_replicate(const Scenario& s, int replicate) {
    ReplicateResult res;
    const int phase1 = s.config_x.phase1_len;
    const int n = s.config_x.subgroup_size;
    const int n_phase2 = s.max_periods - phase1;
    res.signal_x.assign(n_phase2, false);
    res.signal_y.assign(n_phase2, false);
    res.signal_ratio.assign(n_phase2, false);

    try {
        RatioRun run = make_ratio_run(s.config_x, s.config_y);
        for (int k = 1; k <= s.max_periods; ++k) {
            WeibullParams px = s.true_params_x;
            WeibullParams py = s.true_params_y;
            if (s.shift && k >= s.shift->period) {
                px = s.shift->x;
                py = s.shift->y;
            }
            // Disjoint streams: the y process uses the odd period counter.
            RngStream sx{s.seed, static_cast<std::uint64_t>(replicate),
                         static_cast<std::uint64_t>(2 * k)};
            RngStream sy{s.seed, static_cast<std::uint64_t>(replicate),
                         static_cast<std::uint64_t>(2 * k + 1)};
            const ChartPoint ptx =
                step(run.x_run, Subgroup{weibull_sample(px, n, sx), k});
            const ChartPoint pty =
                step(run.y_run, Subgroup{weibull_sample(py, n, sy), k});
            const ChartPoint ptr = step_ratio(run);
            if (k > phase1) {
                const int i = k - phase1 - 1;
                res.signal_x[i] = ptx.signal;
                res.signal_y[i] = pty.signal;
                res.signal_ratio[i] = ptr.signal;
                if (ptx.signal && res.first_signal_x == 0) res.first_signal_x = k;
                if (pty.signal && res.first_signal_y == 0) res.first_signal_y = k;
                if (ptr.signal && res.first_signal_ratio == 0)
                    res.first_signal_ratio = k;
            }
        }
    } catch (const std::exception&) {
        res.errored = true;
    }
    return res;
}

ChartSummary summarize(const std::vector<ReplicateResult>& results,
                       int ReplicateResult::* first,
                       std::vector<bool> ReplicateResult::* signals,
                       int n_phase2, int origin) {
    ChartSummary cs;
    cs.false_alarm_fraction.assign(n_phase2, 0.0);
    std::vector<double> run_lengths;
    int valid = 0;
    for (const auto& r : results) {
        if (r.errored) continue;
        ++valid;
        for (int i = 0; i < n_phase2; ++i)
            if ((r.*signals)[i]) cs.false_alarm_fraction[i] += 1.0;
        cs.first_signal_period.push_back(r.*first);
        if (r.*first > 0) {
            ++cs.signalled;
            run_lengths.push_back(static_cast<double>(r.*first - origin + 1));
        }
    }
    if (valid > 0)
        for (double& f : cs.false_alarm_fraction) f /= valid;
    if (!run_lengths.empty()) {
        std::sort(run_lengths.begin(), run_lengths.end());
        double sum = 0.0;
        for (double rl : run_lengths) sum += rl;
        cs.mean_run_length = sum / run_lengths.size();
        auto q = [&](double p) {
            const size_t i = static_cast<size_t>(
                p * static_cast<double>(run_lengths.size() - 1));
            return run_lengths[i];
        };
        cs.rl_q10 = q(0.1);
        cs.rl_q50 = q(0.5);
        cs.rl_q90 = q(0.9);
    }
    return cs;
}

} // namespace

RunLengthSummary run_scenario(const Scenario& s) {
    if (s.replicates < 1)
        throw invalid_parameter("run_scenario: replicates must be >= 1");
    if (s.max_periods <= s.config_x.phase1_len)
        throw invalid_parameter("run_scenario: max_periods must exceed phase1_len");
    if (s.shift && s.shift->period <= s.config_x.phase1_len)
        throw invalid_parameter("run_scenario: shift must occur after Phase I");

    std::vector<ReplicateResult> results(static_cast<size_t>(s.replicates));
    for (int r = 0; r < s.replicates; ++r) results[r] = run_replicate(s, r);

    const int n_phase2 = s.max_periods - s.config_x.phase1_len;
    const int origin =
        s.shift ? s.shift->period : s.config_x.phase1_len + 1;

    RunLengthSummary summary;
    summary.replicates = s.replicates;
    summary.run_length_origin = origin;
    for (const auto& r : results)
        if (r.errored) ++summary.error_replicates;
    summary.x = summarize(results, &ReplicateResult::first_signal_x,
                          &ReplicateResult::signal_x, n_phase2, origin);
    summary.y = summarize(results, &ReplicateResult::first_signal_y,
                          &ReplicateResult::signal_y, n_phase2, origin);
    summary.ratio = summarize(results, &ReplicateResult::first_signal_ratio,
                              &ReplicateResult::signal_ratio, n_phase2, origin);
    return summary;
}

} // namespace wpc
