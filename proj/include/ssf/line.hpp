#pragma once

// Spectral shift functions on the real line for dissipative pairs, obtained by
// pushing a circle SSF of the Cayley images forward under t = -cot(theta/2).

#include <vector>

#include "ssf/circle.hpp"
#include "ssf/linalg.hpp"

namespace ssf {

struct LineSSF {
  std::vector<double> breakpoints;  // strictly increasing
  std::vector<double> values;       // values[k] on (t_{k-1}, t_k); front/back are the tails
  StepSSF source;

  double left_tail() const { return values.front(); }
  double right_tail() const { return values.back(); }
  double value(double t) const;
  /// integral_{-R}^{R} xi(t) dt
  double windowed_integral(double radius) const;
};

/// t = -cot(theta/2), increasing on (0, 2pi).
double circle_to_line(double theta);

/// Jumps at theta = 2pi land at t = infinity and only separate the two tails.
LineSSF pushforward(const StepSSF& ssf);

/// integral_R |xi(t)| / (1 + t^2) dt on the line.
double weighted_integral_line(const LineSSF& ssf);
/// (1/2) integral_0^{2pi} |xi_c| dtheta from the circle arcs.
double weighted_integral_circle(const StepSSF& ssf);

LineSSF dissipative_ssf(const Dissipative& l0, const Dissipative& l1, int m, const Tolerances& tol = {});

struct ResolventResidual {
  Complex lhs;  // trace((L1 - z)^{-1} - (L0 - z)^{-1})
  Complex rhs;  // -sum_k dxi_k / (t_k - z)
  double residual;
};

ResolventResidual resolvent_trace_residual(const Dissipative& l0, const Dissipative& l1, const LineSSF& ssf,
                                           Complex z);

struct TraceVReport {
  Complex trace_v;
  bool real_integrable_possible;
  double left_tail;
  double right_tail;
  std::vector<double> radii;
  std::vector<double> windowed;
};

TraceVReport trace_v_report(const Dissipative& l0, const Dissipative& l1, const LineSSF& ssf,
                            const std::vector<double>& radii);

struct CayleyIdentityResiduals {
  double defect[2];       // ||D_Tj^2 - 4 Gj* Gj||_F
  double defect_star[2];  // ||D_Tj*^2 - 4 G~j G~j*||_F
  double difference;      // ||(T1 - T0) + 2i((L1 + iI)^{-1} - (L0 + iI)^{-1})||_F
  double max() const;
};

CayleyIdentityResiduals cayley_identity_residuals(const Dissipative& l0, const Dissipative& l1,
                                                  const Tolerances& tol = {});

struct Iml0Report {
  double weighted_difference;    // ||(Im L1)^{-1/2} (L1 - L0) (Im L0)^{-1/2}||_p
  double resolvent_difference;   // ||(L1 + iI)^{-1} - (L0 + iI)^{-1}||_1
  double bounded_plus[2];        // ||(Im Lj)^{1/2} (Lj + iI)^{-1}||
  double bounded_adjoint[2];     // ||(Im Lj)^{1/2} (Lj* - iI)^{-1}||
  double min_imaginary[2];
};

Iml0Report iml0_condition_report(const Dissipative& l0, const Dissipative& l1, double p = 1.0);

}  // namespace ssf
