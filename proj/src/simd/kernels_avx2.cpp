// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "ssf/simd/kernels.hpp"

namespace ssf::simd::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// exp(x) for x <= 0. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-13 Taylor polynomial; arguments below -708 (where 2^n would leave
// the normal range) return 0.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d lower = _mm256_set1_pd(-708.0);
  const __m256d underflow = _mm256_cmp_pd(x, lower, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lower);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr double c[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
      1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
      1.0 / 6.0,          0.5,               1.0,              1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int k = 1; k < 14; ++k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[k]));

  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  return _mm256_andnot_pd(underflow, _mm256_mul_pd(p, scale));
}

}  // namespace

void horner_avx2(std::span<const std::complex<double>> coeffs, std::span<const double> zr,
                 std::span<const double> zi, std::span<double> out_r, std::span<double> out_i) {
  const std::size_t n = zr.size();
  if (coeffs.empty()) {
    for (std::size_t j = 0; j < n; ++j) out_r[j] = out_i[j] = 0.0;
    return;
  }
  const std::size_t deg = coeffs.size() - 1;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d xr = _mm256_loadu_pd(zr.data() + j);
    const __m256d xi = _mm256_loadu_pd(zi.data() + j);
    __m256d pr = _mm256_set1_pd(coeffs[deg].real());
    __m256d pi = _mm256_set1_pd(coeffs[deg].imag());
    for (std::size_t k = deg; k-- > 0;) {
      const __m256d cr = _mm256_set1_pd(coeffs[k].real());
      const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
      const __m256d tr = _mm256_fmadd_pd(pr, xr, _mm256_fnmadd_pd(pi, xi, cr));
      const __m256d ti = _mm256_fmadd_pd(pr, xi, _mm256_fmadd_pd(pi, xr, ci));
      pr = tr;
      pi = ti;
    }
    _mm256_storeu_pd(out_r.data() + j, pr);
    _mm256_storeu_pd(out_i.data() + j, pi);
  }
  if (j < n) {
    horner_scalar(coeffs, zr.subspan(j), zi.subspan(j), out_r.subspan(j), out_i.subspan(j));
  }
}

std::complex<double> weighted_sum_avx2(std::span<const double> w, std::span<const double> re,
                                       std::span<const double> im) {
  const std::size_t n = w.size();
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d wv = _mm256_loadu_pd(w.data() + j);
    sr = _mm256_fmadd_pd(wv, _mm256_loadu_pd(re.data() + j), sr);
    si = _mm256_fmadd_pd(wv, _mm256_loadu_pd(im.data() + j), si);
  }
  double r = hsum(sr), i = hsum(si);
  for (; j < n; ++j) {
    r += w[j] * re[j];
    i += w[j] * im[j];
  }
  return {r, i};
}

void exp_decay_row_avx2(double x_i, double s_i, std::span<const double> x,
                        std::span<const double> s, double kappa, double scale,
                        std::span<double> out) {
  const std::size_t n = x.size();
  const __m256d xi = _mm256_set1_pd(x_i);
  const __m256d a = _mm256_set1_pd(scale * s_i);
  const __m256d negk = _mm256_set1_pd(-kappa);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(xi, _mm256_loadu_pd(x.data() + j)));
    const __m256d e = exp_nonpositive(_mm256_mul_pd(negk, d));
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(_mm256_mul_pd(a, _mm256_loadu_pd(s.data() + j)), e));
  }
  if (j < n) exp_decay_row_scalar(x_i, s_i, x.subspan(j), s.subspan(j), kappa, scale, out.subspan(j));
}

}  // namespace ssf::simd::detail
