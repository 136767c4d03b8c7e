#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "wpc/errors.hpp"

namespace wpc {

// Gauss-Kronrod 7-15 pair on [-1, 1].
namespace gk15 {

// Kronrod abscissae (positive half; index 0 is the midpoint).
inline constexpr std::array<double, 8> nodes = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01,
};

inline constexpr std::array<double, 8> kronrod_weights = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02,
};

// Gauss-7 weights for the even-index Kronrod nodes (0, 2, 4, 6).
inline constexpr std::array<double, 4> gauss_weights = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01,
};

} // namespace gk15

// One GK15 panel over [a, b]; returns {kronrod, |kronrod - gauss|}.
template <class F>
std::pair<double, double> gk15_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kron = gk15::kronrod_weights[0] * f0;
    double gauss = gk15::gauss_weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15::nodes[i];
        const double fs = f(mid + dx) + f(mid - dx);
        kron += gk15::kronrod_weights[i] * fs;
        if ((i & 1) == 0) gauss += gk15::gauss_weights[i / 2] * fs;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

namespace detail {

template <class F>
double integrate_rec(F& f, double a, double b, double kron, double err,
                     double rel_tol, double abs_tol, int depth,
                     bool& converged) {
    if (err <= rel_tol * std::abs(kron) + abs_tol) return kron;
    if (depth <= 0) {
        if (err > 1e3 * (rel_tol * std::abs(kron) + abs_tol)) converged = false;
        return kron;
    }
    const double mid = 0.5 * (a + b);
    auto [kl, el] = gk15_panel(f, a, mid);
    auto [kr, er] = gk15_panel(f, mid, b);
    return integrate_rec(f, a, mid, kl, el, rel_tol, 0.5 * abs_tol, depth - 1,
                         converged) +
           integrate_rec(f, mid, b, kr, er, rel_tol, 0.5 * abs_tol, depth - 1,
                         converged);
}

} // namespace detail

// Adaptive GK15 over a finite interval. Throws quadrature_failure when the
// requested tolerance cannot be reached within the subdivision budget.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-9,
                 double abs_tol = 0.0, int max_depth = 28) {
    if (!(a <= b)) throw invalid_parameter("integrate: bad interval");
    if (a == b) return 0.0;
    bool converged = true;
    auto [kron, err] = gk15_panel(f, a, b);
    // Refine the magnitude estimate one level before fixing the absolute
    // budget, so a peaked integrand missed by the first panel still gets a
    // sane budget. Near high-order zeros the per-panel relative test is
    // scale-invariant and would subdivide forever without this floor.
    double magnitude = std::abs(kron);
    {
        const double mid = 0.5 * (a + b);
        auto [kl, el] = gk15_panel(f, a, mid);
        auto [kr, er] = gk15_panel(f, mid, b);
        magnitude = std::max(magnitude, std::abs(kl) + std::abs(kr));
    }
    abs_tol += 0.5 * rel_tol * magnitude;
    const double v = detail::integrate_rec(f, a, b, kron, err, rel_tol,
                                           abs_tol, max_depth, converged);
    if (!converged) throw quadrature_failure("integrate: tolerance not met");
    return v;
}

// Integral over (0, inf) via the map x = t/(1-t). Used mostly by
// normalization checks over unbounded supports.
template <class F>
double integrate_half_line(F&& f, double rel_tol = 1e-9) {
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        return f(t / om) / (om * om);
    };
    // Split at t = 0.5 so sharp densities near x ~ 1 are resolved early.
    return integrate(g, 0.0, 0.5, rel_tol, 0.0) +
           integrate(g, 0.5, 1.0 - 1e-14, rel_tol, 0.0);
}

} // namespace wpc
