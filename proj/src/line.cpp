#include "ssf/line.hpp"

#include <algorithm>
#include <cmath>

#include "ssf/error.hpp"

namespace ssf {

namespace {

ComplexMatrix resolvent(const ComplexMatrix& l, Complex z) {
  return (l - z * identity(l.rows())).partialPivLu().inverse();
}

ComplexMatrix im_part(const Dissipative& l) {
  const ComplexMatrix im = imaginary_part(l.matrix());
  return 0.5 * (im + im.adjoint());
}

}  // namespace

double circle_to_line(double theta) { return -1.0 / std::tan(0.5 * theta); }

double LineSSF::value(double t) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  // Closed-open intervals [t_k, t_{k+1}), matching the circle arcs.
  return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double LineSSF::windowed_integral(double radius) const {
  if (radius <= 0.0) return 0.0;
  double acc = 0.0;
  double lo = -radius;
  for (std::size_t k = 0; k <= breakpoints.size(); ++k) {
    const double hi = k < breakpoints.size() ? std::min(breakpoints[k], radius) : radius;
    if (hi > lo) {
      acc += values[k] * (hi - lo);
      lo = hi;
    }
    if (lo >= radius) break;
  }
  return acc;
}

LineSSF pushforward(const StepSSF& ssf) {
  LineSSF out;
  out.source = ssf;
  const auto arcs = ssf.arcs();
  out.values.reserve(arcs.size());
  for (const auto& a : arcs) out.values.push_back(a.value);
  for (std::size_t k = 1; k < arcs.size(); ++k) out.breakpoints.push_back(circle_to_line(arcs[k].theta_start));
  return out;
}

double weighted_integral_line(const LineSSF& ssf) {
  double acc = 0.0;
  double lo = -0.5 * kPi;
  for (std::size_t k = 0; k < ssf.values.size(); ++k) {
    const double hi = k < ssf.breakpoints.size() ? std::atan(ssf.breakpoints[k]) : 0.5 * kPi;
    acc += std::fabs(ssf.values[k]) * (hi - lo);
    lo = hi;
  }
  return acc;
}

double weighted_integral_circle(const StepSSF& ssf) {
  double acc = 0.0;
  for (const auto& a : ssf.arcs()) acc += std::fabs(a.value) * (a.theta_end - a.theta_start);
  return 0.5 * acc;
}

LineSSF dissipative_ssf(const Dissipative& l0, const Dissipative& l1, int m, const Tolerances& tol) {
  require_same_dim(l0.dim(), l1.dim(), "dissipative_ssf");
  const CayleyResult c0 = cayley(l0, tol);
  const CayleyResult c1 = cayley(l1, tol);
  return pushforward(contraction_ssf(c0.t, c1.t, m, tol));
}

ResolventResidual resolvent_trace_residual(const Dissipative& l0, const Dissipative& l1, const LineSSF& ssf,
                                           Complex z) {
  require_same_dim(l0.dim(), l1.dim(), "resolvent_trace_residual");
  if (z.imag() > -1e-6) throw Error(ErrorKind::InvalidParameter, "need Im z <= -1e-6");
  ResolventResidual r;
  r.lhs = resolvent(l1.matrix(), z).trace() - resolvent(l0.matrix(), z).trace();
  r.rhs = Complex{0.0, 0.0};
  for (std::size_t k = 0; k < ssf.breakpoints.size(); ++k) {
    const double jump = ssf.values[k + 1] - ssf.values[k];
    r.rhs -= jump / (ssf.breakpoints[k] - z);
  }
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

TraceVReport trace_v_report(const Dissipative& l0, const Dissipative& l1, const LineSSF& ssf,
                            const std::vector<double>& radii) {
  require_same_dim(l0.dim(), l1.dim(), "trace_v_report");
  TraceVReport r;
  r.trace_v = (l1.matrix() - l0.matrix()).trace();
  r.real_integrable_possible = std::fabs(r.trace_v.imag()) <= 1e-10;
  r.left_tail = ssf.left_tail();
  r.right_tail = ssf.right_tail();
  r.radii = radii;
  for (double radius : radii) r.windowed.push_back(ssf.windowed_integral(radius));
  return r;
}

double CayleyIdentityResiduals::max() const {
  return std::max({defect[0], defect[1], defect_star[0], defect_star[1], difference});
}

CayleyIdentityResiduals cayley_identity_residuals(const Dissipative& l0, const Dissipative& l1,
                                                  const Tolerances& tol) {
  require_same_dim(l0.dim(), l1.dim(), "cayley_identity_residuals");
  const Index n = l0.dim();
  const ComplexMatrix id = identity(n);
  CayleyIdentityResiduals r{};
  ComplexMatrix t[2], plus_inv[2];
  const Dissipative* ls[2] = {&l0, &l1};
  for (int j = 0; j < 2; ++j) {
    t[j] = cayley(*ls[j], tol).t.matrix();
    plus_inv[j] = resolvent(ls[j]->matrix(), -kI);
    const ComplexMatrix root = hermitian_sqrt(im_part(*ls[j]), tol);
    const ComplexMatrix g = root * plus_inv[j];
    const ComplexMatrix gt = plus_inv[j] * root;
    r.defect[j] = frobenius((id - t[j].adjoint() * t[j]) - 4.0 * g.adjoint() * g);
    r.defect_star[j] = frobenius((id - t[j] * t[j].adjoint()) - 4.0 * gt * gt.adjoint());
  }
  r.difference = frobenius((t[1] - t[0]) + 2.0 * kI * (plus_inv[1] - plus_inv[0]));
  return r;
}

Iml0Report iml0_condition_report(const Dissipative& l0, const Dissipative& l1, double p) {
  require_same_dim(l0.dim(), l1.dim(), "iml0_condition_report");
  Iml0Report r{};
  ComplexMatrix inv_root[2], root[2], plus_inv[2], adj_inv[2];
  const Dissipative* ls[2] = {&l0, &l1};
  for (int j = 0; j < 2; ++j) {
    const HermitianEigen e = hermitian_eigen(im_part(*ls[j]));
    r.min_imaginary[j] = e.values.size() ? e.values(0) : 0.0;
    if (r.min_imaginary[j] < 1e-12)
      throw Error(ErrorKind::KernelViolation,
                  "Im L" + std::to_string(j) + " is numerically singular (min eigenvalue " +
                      std::to_string(r.min_imaginary[j]) + ")");
    RealVector s = e.values.cwiseSqrt();
    root[j] = e.vectors * s.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    inv_root[j] = e.vectors * s.cwiseInverse().cast<Complex>().asDiagonal() * e.vectors.adjoint();
    plus_inv[j] = resolvent(ls[j]->matrix(), -kI);
    adj_inv[j] = resolvent(ls[j]->matrix().adjoint(), kI);
    r.bounded_plus[j] = spectral_norm(root[j] * plus_inv[j]);
    r.bounded_adjoint[j] = spectral_norm(root[j] * adj_inv[j]);
  }
  r.weighted_difference = schatten_norm(inv_root[1] * (l1.matrix() - l0.matrix()) * inv_root[0], p);
  r.resolvent_difference = schatten_norm(plus_inv[1] - plus_inv[0], 1.0);
  return r;
}

}  // namespace ssf
