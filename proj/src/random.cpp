#include "ssf/random.hpp"

#include <cmath>

namespace ssf {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex{re, im};
    }
  return g;
}

ComplexMatrix random_hermitian(Rng& rng, Index n) {
  ComplexMatrix g = random_gaussian(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_contraction(Rng& rng, Index n, double margin) {
  ComplexMatrix g = random_gaussian(rng, n, n);
  return g / (spectral_norm(g) + margin);
}

ComplexMatrix random_unitary(Rng& rng, Index n) {
  return polar_factors(random_gaussian(rng, n, n)).isometry;
}

ComplexMatrix random_dissipative(Rng& rng, Index n) {
  ComplexMatrix h = random_hermitian(rng, n);
  ComplexMatrix b = random_gaussian(rng, n, n);
  ComplexMatrix p = b * b.adjoint() / static_cast<double>(n);
  p = 0.5 * (p + p.adjoint());
  return h + kI * p;
}

ComplexMatrix random_hermitian_spectrum(Rng& rng, Index n, double lo, double hi) {
  ComplexMatrix q = random_unitary(rng, n);
  RealVector lambda(n);
  for (Index k = 0; k < n; ++k) lambda(k) = rng.uniform(lo, hi);
  ComplexMatrix a = q * lambda.cast<Complex>().asDiagonal() * q.adjoint();
  return 0.5 * (a + a.adjoint());
}

Polynomial random_polynomial(Rng& rng, std::size_t degree) {
  Polynomial p(degree + 1);
  for (auto& c : p) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    c = Complex{re, im};
  }
  return p;
}

}  // namespace ssf
