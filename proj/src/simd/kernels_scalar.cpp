#include <cmath>

#include "ssf/simd/kernels.hpp"

namespace ssf::simd::detail {

void horner_scalar(std::span<const std::complex<double>> coeffs, std::span<const double> zr,
                   std::span<const double> zi, std::span<double> out_r, std::span<double> out_i) {
  const std::size_t n = zr.size();
  if (coeffs.empty()) {
    for (std::size_t j = 0; j < n; ++j) out_r[j] = out_i[j] = 0.0;
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double pr = coeffs.back().real();
    double pi = coeffs.back().imag();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
      const double tr = pr * zr[j] - pi * zi[j] + coeffs[k].real();
      const double ti = pr * zi[j] + pi * zr[j] + coeffs[k].imag();
      pr = tr;
      pi = ti;
    }
    out_r[j] = pr;
    out_i[j] = pi;
  }
}

std::complex<double> weighted_sum_scalar(std::span<const double> w, std::span<const double> re,
                                         std::span<const double> im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    sr += w[j] * re[j];
    si += w[j] * im[j];
  }
  return {sr, si};
}

void exp_decay_row_scalar(double x_i, double s_i, std::span<const double> x,
                          std::span<const double> s, double kappa, double scale,
                          std::span<double> out) {
  const double a = scale * s_i;
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = a * s[j] * std::exp(-kappa * std::fabs(x_i - x[j]));
}

}  // namespace ssf::simd::detail
