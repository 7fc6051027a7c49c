#pragma once

#include <complex>
#include <vector>

namespace ssf {

using Complex = std::complex<double>;

/// Analytic polynomial, coefficients in ascending order: c[0] + c[1] z + ...
using Polynomial = std::vector<Complex>;

inline Complex evaluate(const Polynomial& p, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) return Polynomial{Complex{0.0, 0.0}};
  Polynomial d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

/// Multiplies by z^shift.
inline Polynomial shifted(const Polynomial& p, std::size_t shift) {
  Polynomial out(p.size() + shift, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < p.size(); ++k) out[k + shift] = p[k];
  return out;
}

inline Polynomial monomial(std::size_t degree) {
  Polynomial p(degree + 1, Complex{0.0, 0.0});
  p[degree] = 1.0;
  return p;
}

inline std::size_t degree(const Polynomial& p) {
  std::size_t d = p.empty() ? 0 : p.size() - 1;
  while (d > 0 && p[d] == Complex{0.0, 0.0}) --d;
  return d;
}

inline double coefficient_l1(const Polynomial& p) {
  double s = 0.0;
  for (const auto& c : p) s += std::abs(c);
  return s;
}

}  // namespace ssf
