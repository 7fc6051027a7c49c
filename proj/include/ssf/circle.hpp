#pragma once

// Spectral shift functions on the unit circle.
//
// Orientation: theta runs counterclockwise over (0, 2pi]; zeta = e^{i theta}.
// Every trace integral is  integral_T f'(zeta) xi(zeta) dzeta.

#include <optional>
#include <string>
#include <vector>

#include "ssf/dilation.hpp"
#include "ssf/linalg.hpp"

namespace ssf {

struct Jump {
  double theta;  // in (0, 2pi]
  int size;      // nonzero
};

/// Piecewise-constant circle SSF: xi(theta) = gauge + sum_{theta_k <= theta} jump_k.
class StepSSF {
 public:
  StepSSF() = default;
  /// Validates ordering, nonzero sizes and zero total jump.
  StepSSF(std::vector<Jump> jumps, double gauge);

  const std::vector<Jump>& jumps() const noexcept { return jumps_; }
  double gauge() const noexcept { return gauge_; }
  double value(double theta) const;
  /// Same jumps, different additive constant.
  StepSSF with_gauge(double gauge) const { return StepSSF(jumps_, gauge); }
  /// (1/2pi) integral of xi over (0, 2pi].
  double mean() const;

  struct Arc {
    double theta_start;
    double theta_end;
    double value;
  };
  /// Closed-open arcs [theta_k, theta_{k+1}) covering (0, 2pi].
  std::vector<Arc> arcs() const;

 private:
  std::vector<Jump> jumps_;
  double gauge_ = 0.0;
};

/// Grid samples of the determinant-route SSF.
struct SampledSSF {
  double radius = 1.0;
  std::vector<double> thetas;  // uniform, theta_j = 2pi (j+1) / N
  std::vector<double> values;
  int winding = 0;
  double kappa = -1.0;  // sign applied to the unwrapped phase
  double gauge = 0.0;   // constant subtracted to reach zero mean
  int refinements = 0;  // grid doublings after unwrap ambiguities
};

/// Sign relating the unwrapped phase of the perturbation determinant to the
/// eigenphase-counting SSF: xi = kappa * arg(Delta) / pi. Fixed by comparison
/// with unitary_ssf on unitary pairs.
inline constexpr double kDeterminantSign = -1.0;

StepSSF unitary_ssf(const Unitary& u0, const Unitary& u1, const Tolerances& tol = {});

/// integral_T f' xi dzeta = -sum_k jump_k f(e^{i theta_k}), exactly.
Complex ssf_trace_integral(const StepSSF& ssf, const Polynomial& f);

StepSSF contraction_ssf(const Contraction& t0, const Contraction& t1, int m, const Tolerances& tol = {});

/// trace(f(B) - f(A)) computed directly from the matrices.
Complex trace_difference(const ComplexMatrix& a, const ComplexMatrix& b, const Polynomial& f);

/// det(I + (T1 - T0)(T0 - zeta I)^{-1}) for |zeta| > 1.
Complex perturbation_determinant(const Contraction& t0, const Contraction& t1, Complex zeta,
                                 const Tolerances& tol = {});

struct DeterminantOptions {
  double radius = 1.0 + 1e-4;
  std::size_t grid = 8192;
  std::size_t max_grid = std::size_t{1} << 16;
};

SampledSSF determinant_ssf(const Contraction& t0, const Contraction& t1, const DeterminantOptions& opt = {},
                           const Tolerances& tol = {});

/// Trapezoid rule for integral_T f' xi dzeta on the unit circle.
Complex sampled_trace_integral(const SampledSSF& ssf, const Polynomial& f);

struct HardyGaugeResult {
  Complex perturbation;   // integral_T f'(zeta) zeta^k dzeta (8192-point trapezoid)
  Complex base;           // trace integral of the given SSF
  Complex shifted;        // trace integral of ssf + zeta^k
};

HardyGaugeResult hardy_gauge_check(const StepSSF& ssf, std::size_t k, const Polynomial& f,
                                   std::size_t samples = 8192);

struct RealSsfConditions {
  double min_eig_d_t0 = 0.0;
  bool kernel_certified = false;   // min eigenvalue of D_T0 > 1e-8
  bool kernel_violation = false;   // min eigenvalue of D_T0 < 1e-12
  std::optional<double> weighted_difference;          // ||D_T1*^{-2b} (T1-T0) D_T0^{-2a}||_p
  std::optional<double> weighted_adjoint_difference;  // ||D_T1^{-2b} (T1*-T0*) D_T0^{-2a}||_p
  double defect_difference = 0.0;       // ||D_T1 - D_T0||_p
  double defect_star_difference = 0.0;  // ||D_T1* - D_T0*||_p
  double identity_residual = 0.0;       // Y - X = -(T1*-T0*)T0 - T1*(T1-T0)
  std::string note;
};

RealSsfConditions real_ssf_conditions_report(const Contraction& t0, const Contraction& t1, double alpha,
                                             double beta, double p, const Tolerances& tol = {});

/// D^{-s} by Hermitian eigendecomposition; eigenvalues below floor throw
/// KernelViolation.
ComplexMatrix hermitian_inverse_power(const ComplexMatrix& d, double s, double floor = 1e-12);

struct StepSampleComparison {
  double max_deviation = 0.0;
  std::size_t compared = 0;
};

/// Compares a sampled SSF with a step SSF at grid points whose circular
/// distance to every jump is at least min_distance.
StepSampleComparison compare_sampled_to_step(const SampledSSF& sampled, const StepSSF& step,
                                             double min_distance);

double circular_distance(double a, double b);

}  // namespace ssf
