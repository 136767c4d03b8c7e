#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Arithmetic inner loops behind the posterior machinery. The one hot kernel
// is sum_exp_scaled: with lx[i] = ln x_i it evaluates the Weibull power sum
// sum_i x_i^beta = sum_i exp(beta * lx[i]), which the quadrature hits once
// per integrand node. A scalar reference implementation always exists; on
// x86 an AVX2+FMA variant is selected at runtime, on AArch64 a NEON variant.

namespace wpc::kernels {

enum class Backend { scalar, avx2, neon };

// Backend chosen by runtime CPU detection (cached after first call).
Backend active_backend();
std::string_view backend_name(Backend b);

// Force a backend (tests / diagnostics). Throws invalid_parameter if the
// requested backend is not available on this machine.
void set_backend(Backend b);

// sum_i exp(scale * v[i]) via the active backend.
double sum_exp_scaled(double scale, std::span<const double> v);

// Reference implementation (plain std::exp loop, sequential summation).
double sum_exp_scaled_scalar(double scale, std::span<const double> v);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
double sum_exp_scaled_avx2(double scale, std::span<const double> v);
#endif

#if defined(__aarch64__)
double sum_exp_scaled_neon(double scale, std::span<const double> v);
#endif

// sum_i ln v[i]; cold path (once per period), scalar only.
double sum_log(std::span<const double> v);

} // namespace wpc::kernels
