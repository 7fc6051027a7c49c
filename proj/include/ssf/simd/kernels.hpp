#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// optional AVX2/FMA variants. The active table is chosen once at startup
// from the CPU feature set; SSF_LAB_SIMD=scalar|avx2 overrides the choice.
//
// Complex data is passed split into real and imaginary arrays so that the
// vector variants can work on four points per register.

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ssf::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  /// out[j] = sum_k coeffs[k] * z_j^k  (Horner, per point)
  void (*horner)(std::span<const std::complex<double>> coeffs, std::span<const double> zr,
                 std::span<const double> zi, std::span<double> out_r, std::span<double> out_i);

  /// sum_j w_j * (re_j + i im_j)
  std::complex<double> (*weighted_sum)(std::span<const double> w, std::span<const double> re,
                                       std::span<const double> im);

  /// out[j] = scale * s_i * s[j] * exp(-kappa * |x_i - x[j]|)
  void (*exp_decay_row)(double x_i, double s_i, std::span<const double> x,
                        std::span<const double> s, double kappa, double scale,
                        std::span<double> out);
};

const KernelTable& scalar_kernels() noexcept;
/// Present when the AVX2 variant was compiled in and the CPU supports it.
std::optional<KernelTable> avx2_kernels() noexcept;

const KernelTable& active() noexcept;
Isa active_isa() noexcept;
/// Forces a table; returns false when the requested ISA is unavailable.
bool force_isa(Isa isa) noexcept;

namespace detail {
void horner_scalar(std::span<const std::complex<double>>, std::span<const double>,
                   std::span<const double>, std::span<double>, std::span<double>);
std::complex<double> weighted_sum_scalar(std::span<const double>, std::span<const double>,
                                         std::span<const double>);
void exp_decay_row_scalar(double, double, std::span<const double>, std::span<const double>,
                          double, double, std::span<double>);
#if defined(SSF_HAVE_AVX2_KERNELS)
void horner_avx2(std::span<const std::complex<double>>, std::span<const double>,
                 std::span<const double>, std::span<double>, std::span<double>);
std::complex<double> weighted_sum_avx2(std::span<const double>, std::span<const double>,
                                       std::span<const double>);
void exp_decay_row_avx2(double, double, std::span<const double>, std::span<const double>,
                        double, double, std::span<double>);
#endif
}  // namespace detail

}  // namespace ssf::simd
