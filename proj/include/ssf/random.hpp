#pragma once

// Seeded generators for test corpora and scenario files. Draws are built from
// the raw mt19937_64 stream (which the standard fixes bit-for-bit), so a seed
// produces the same matrices on every platform.

#include <cstdint>
#include <random>

#include "ssf/linalg.hpp"

namespace ssf {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols);
ComplexMatrix random_hermitian(Rng& rng, Index n);
/// G / (s_max(G) + margin): a strict contraction for margin > 0.
ComplexMatrix random_contraction(Rng& rng, Index n, double margin = 0.1);
/// Polar factor of a complex Gaussian.
ComplexMatrix random_unitary(Rng& rng, Index n);
/// H + iP with H Hermitian and P positive definite.
ComplexMatrix random_dissipative(Rng& rng, Index n);
/// Hermitian with spectrum drawn uniformly from [lo, hi].
ComplexMatrix random_hermitian_spectrum(Rng& rng, Index n, double lo, double hi);
Polynomial random_polynomial(Rng& rng, std::size_t degree);

}  // namespace ssf
