#include "wpc/kernels.hpp"

#include <cmath>

#include "wpc/errors.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace wpc::kernels {

double sum_exp_scaled_scalar(double scale, std::span<const double> v) {
    double s = 0.0;
    for (double lx : v) s += std::exp(scale * lx);
    return s;
}

double sum_log(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::log(x);
    return s;
}

#if defined(__aarch64__)

namespace {

// exp(x) for two lanes: x = n*ln2 + r, e^x = 2^n * e^r with e^r a degree-13
// Taylor polynomial on |r| <= ln2/2. Mirrors the AVX2 variant.
inline float64x2_t exp2lane(float64x2_t x) {
    const float64x2_t log2e = vdupq_n_f64(1.4426950408889634074);
    const float64x2_t ln2_hi = vdupq_n_f64(6.93145751953125e-1);
    const float64x2_t ln2_lo = vdupq_n_f64(1.42860682030941723212e-6);

    x = vminq_f64(x, vdupq_n_f64(709.0));
    x = vmaxq_f64(x, vdupq_n_f64(-708.0));

    float64x2_t n = vrndnq_f64(vmulq_f64(x, log2e));
    float64x2_t r = vfmsq_f64(x, n, ln2_hi);
    r = vfmsq_f64(r, n, ln2_lo);

    static const double c[14] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
        1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
        1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
        1.0 / 24.0,         1.0 / 6.0,         0.5,
        1.0,                1.0};
    float64x2_t p = vdupq_n_f64(c[0]);
    for (int i = 1; i < 14; ++i) p = vfmaq_f64(vdupq_n_f64(c[i]), p, r);

    // 2^n through the exponent field.
    int64x2_t ni = vcvtnq_s64_f64(n);
    int64x2_t bits = vshlq_n_s64(vaddq_s64(ni, vdupq_n_s64(1023)), 52);
    return vmulq_f64(p, vreinterpretq_f64_s64(bits));
}

} // namespace

double sum_exp_scaled_neon(double scale, std::span<const double> v) {
    const size_t n = v.size();
    const double* p = v.data();
    float64x2_t acc = vdupq_n_f64(0.0);
    const float64x2_t s = vdupq_n_f64(scale);
    size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, exp2lane(vmulq_f64(s, vld1q_f64(p + i))));
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i) sum += std::exp(scale * p[i]);
    return sum;
}

#endif // __aarch64__

namespace {

Backend detect_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return Backend::avx2;
#elif defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

Backend g_backend = detect_backend();

} // namespace

Backend active_backend() { return g_backend; }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

void set_backend(Backend b) {
    if (b == Backend::scalar) {
        g_backend = b;
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2 && avx2_available()) {
        g_backend = b;
        return;
    }
#endif
#if defined(__aarch64__)
    if (b == Backend::neon) {
        g_backend = b;
        return;
    }
#endif
    throw invalid_parameter("kernel backend not available on this machine");
}

double sum_exp_scaled(double scale, std::span<const double> v) {
    switch (g_backend) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return sum_exp_scaled_avx2(scale, v);
#endif
#if defined(__aarch64__)
        case Backend::neon: return sum_exp_scaled_neon(scale, v);
#endif
        default: return sum_exp_scaled_scalar(scale, v);
    }
}

} // namespace wpc::kernels
