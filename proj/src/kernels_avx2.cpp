// AVX2+FMA variant of the power-sum kernel. Compiled with -mavx2 -mfma in
// its own translation unit; callers reach it only after the runtime check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "wpc/kernels.hpp"

namespace wpc::kernels {

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

// exp(x) for four lanes: x = n*ln2 + r, e^x = 2^n * e^r with e^r a
// degree-13 Taylor polynomial on |r| <= ln2/2 (remainder < 1 ulp there).
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    x = _mm256_min_pd(x, _mm256_set1_pd(709.0));
    x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    static const double c[14] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
        1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
        1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
        1.0 / 24.0,         1.0 / 6.0,         0.5,
        1.0,                1.0};
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 14; ++i)
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

    // 2^n via the exponent field; n is within [-708, 709]*log2e so the
    // biased exponent stays in range.
    __m128i ni = _mm256_cvtpd_epi32(n);
    __m256i ni64 = _mm256_cvtepi32_epi64(ni);
    __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(ni64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

} // namespace

double sum_exp_scaled_avx2(double scale, std::span<const double> v) {
    const size_t n = v.size();
    const double* p = v.data();
    __m256d acc = _mm256_setzero_pd();
    const __m256d s = _mm256_set1_pd(scale);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, exp4(_mm256_mul_pd(s, _mm256_loadu_pd(p + i))));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d h = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(h, _mm_unpackhi_pd(h, h)));
    for (; i < n; ++i) sum += std::exp(scale * p[i]);
    return sum;
}

} // namespace wpc::kernels

#endif // x86_64
