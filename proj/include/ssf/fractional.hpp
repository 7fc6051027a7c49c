#pragma once

// Fractional powers of Hermitian contractions 0 <= X <= I and the Schatten
// bound for Y^sigma - X^sigma.

#include <optional>

#include "ssf/linalg.hpp"

namespace ssf {

/// sin(pi sigma) / pi
double c_sigma(double sigma);

class FractionalJob {
 public:
  /// Validates Hermitian inputs with spectra in [0, 1], sigma in (0, 1),
  /// alpha, beta >= 0, alpha + beta in (1 - sigma, 1] and p >= 1.
  FractionalJob(ComplexMatrix x, ComplexMatrix y, double sigma, double alpha, double beta, double p,
                const Tolerances& tol = {});

  const ComplexMatrix& x() const noexcept { return x_; }
  const ComplexMatrix& y() const noexcept { return y_; }
  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double p() const noexcept { return p_; }
  /// Smallest eigenvalue over X and Y.
  double min_eigenvalue() const noexcept { return min_eig_; }
  /// Spectrum touches [1e-10, 1e-3]; quadrature accuracy degrades there.
  bool ill_conditioned() const noexcept { return min_eig_ < 1e-3; }

 private:
  ComplexMatrix x_, y_;
  double sigma_, alpha_, beta_, p_;
  double min_eig_ = 0.0;
};

ComplexMatrix fractional_power(const ComplexMatrix& x, double sigma, const Tolerances& tol = {});

/// c_sigma integral_0^inf t^sigma (tI + Y)^{-1} (Y - X) (tI + X)^{-1} dt with a
/// fixed rule of the given size (split evenly between (0, 1] and [1, inf)).
ComplexMatrix fractional_diff_fixed(const FractionalJob& job, int nodes);

struct FractionalQuadrature {
  ComplexMatrix value;  // result at the finest rule evaluated
  int nodes;            // size of that rule
  double change;        // ||Q_nodes - Q_{nodes/2}||_F
  bool ill_conditioned;
};

/// Doubles the rule, starting from `nodes`, until successive results agree to
/// 1e-8 (relative to max(1, ||Q||_F)). Throws QuadratureDivergence after
/// max_doublings.
FractionalQuadrature fractional_diff_quadrature(const FractionalJob& job, int nodes = 200,
                                                int max_doublings = 6);

struct FyoklaReport {
  double lhs;             // ||Y^sigma - X^sigma||_p
  double weighted;        // ||Y^{-beta} (Y - X) X^{-alpha}||_p
  double difference;      // ||X - Y||_p
  double bound;
  bool holds;             // lhs <= bound + 1e-10
  double c;
  // beta = 0, alpha = 1 route for invertible X
  std::optional<double> corollary_bound;
};

FyoklaReport fyokla_bound_report(const FractionalJob& job, bool corollary = false);

/// ||Y(tI+Y)^{-1} - X(tI+X)^{-1} - t(tI+Y)^{-1}(Y-X)(tI+X)^{-1}||_F
double resolvent_difference_identity_check(const ComplexMatrix& x, const ComplexMatrix& y, double t);

struct ResolventNormSlack {
  double power_slack;     // t^{sigma-1} - ||t^sigma (tI+Y)^{-1}||
  double weighted_slack;  // t^{alpha-1} - ||X^alpha (tI+X)^{-1}||
};

ResolventNormSlack resolvent_norm_slack(const ComplexMatrix& x, const ComplexMatrix& y, double sigma,
                                        double alpha, double t);

}  // namespace ssf
