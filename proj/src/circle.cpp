#include "ssf/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssf/error.hpp"
#include "ssf/parallel.hpp"
#include "ssf/simd/kernels.hpp"

namespace ssf {

namespace {

double to_circle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t <= 0.0) t += kTwoPi;
  return t;
}

/// Principal argument of a / b without forming the quotient's magnitude.
double phase_step(Complex a, Complex b) { return std::arg(a * std::conj(b)); }

void circle_points(std::size_t n, std::vector<double>& zr, std::vector<double>& zi) {
  zr.resize(n);
  zi.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = kTwoPi * static_cast<double>(j + 1) / static_cast<double>(n);
    zr[j] = std::cos(theta);
    zi[j] = std::sin(theta);
  }
}

/// (2pi / N) sum_j g(zeta_j) w_j  for the polynomial g on the N-point circle grid.
Complex circle_trapezoid(const Polynomial& g, const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::vector<double> zr, zi, gr(n), gi(n);
  circle_points(n, zr, zi);
  const auto& k = simd::active();
  k.horner(g, zr, zi, gr, gi);
  return k.weighted_sum(w, gr, gi) * (kTwoPi / static_cast<double>(n));
}

}  // namespace

double circular_distance(double a, double b) {
  const double d = std::fabs(std::fmod(a - b, kTwoPi));
  return std::min(d, kTwoPi - d);
}

StepSSF::StepSSF(std::vector<Jump> jumps, double gauge) : jumps_(std::move(jumps)), gauge_(gauge) {
  int total = 0;
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const Jump& j = jumps_[k];
    if (!(j.theta > 0.0 && j.theta <= kTwoPi))
      throw Error(ErrorKind::InvalidParameter, "jump location outside (0, 2pi]");
    if (j.size == 0) throw Error(ErrorKind::InvalidParameter, "zero jump size");
    if (k > 0 && !(j.theta > jumps_[k - 1].theta))
      throw Error(ErrorKind::InvalidParameter, "jump locations must be strictly increasing");
    total += j.size;
  }
  if (total != 0) throw Error(ErrorKind::InvalidParameter, "jump sizes must sum to zero");
  if (!std::isfinite(gauge_)) throw Error(ErrorKind::NonFinite, "gauge");
}

double StepSSF::value(double theta) const {
  const double t = to_circle(theta);
  int acc = 0;
  for (const Jump& j : jumps_) {
    if (j.theta > t) break;
    acc += j.size;
  }
  return gauge_ + acc;
}

double StepSSF::mean() const {
  double s = 0.0;
  for (const Jump& j : jumps_) s += j.size * (kTwoPi - j.theta);
  return gauge_ + s / kTwoPi;
}

std::vector<StepSSF::Arc> StepSSF::arcs() const {
  std::vector<Arc> out;
  double start = 0.0;
  int acc = 0;
  for (const Jump& j : jumps_) {
    if (j.theta >= kTwoPi) break;
    out.push_back({start, j.theta, gauge_ + acc});
    start = j.theta;
    acc += j.size;
  }
  out.push_back({start, kTwoPi, gauge_ + acc});
  return out;
}

StepSSF unitary_ssf(const Unitary& u0, const Unitary& u1, const Tolerances& tol) {
  require_same_dim(u0.dim(), u1.dim(), "unitary_ssf");
  std::vector<Jump> raw;
  for (const auto& e : eigenphases(u0, tol)) raw.push_back({e.phase, e.multiplicity});
  for (const auto& e : eigenphases(u1, tol)) raw.push_back({e.phase, -e.multiplicity});
  std::sort(raw.begin(), raw.end(), [](const Jump& a, const Jump& b) { return a.theta < b.theta; });

  std::vector<Jump> merged;
  for (const Jump& j : raw) {
    if (!merged.empty() && j.theta - merged.back().theta < tol.phase_cluster) {
      merged.back().size += j.size;
    } else {
      merged.push_back(j);
    }
  }
  std::vector<Jump> jumps;
  for (const Jump& j : merged)
    if (j.size != 0) jumps.push_back(j);

  double s = 0.0;
  for (const Jump& j : jumps) s += j.size * (kTwoPi - j.theta);
  return StepSSF(std::move(jumps), -s / kTwoPi);
}

Complex ssf_trace_integral(const StepSSF& ssf, const Polynomial& f) {
  Complex acc{0.0, 0.0};
  for (const Jump& j : ssf.jumps()) acc -= static_cast<double>(j.size) * evaluate(f, std::polar(1.0, j.theta));
  return acc;
}

StepSSF contraction_ssf(const Contraction& t0, const Contraction& t1, int m, const Tolerances& tol) {
  auto [d0, d1] = dilation_pair(t0, t1, m, tol);
  return unitary_ssf(d0.u, d1.u, tol);
}

Complex trace_difference(const ComplexMatrix& a, const ComplexMatrix& b, const Polynomial& f) {
  return analytic_poly_eval(b, f).trace() - analytic_poly_eval(a, f).trace();
}

Complex perturbation_determinant(const Contraction& t0, const Contraction& t1, Complex zeta,
                                 const Tolerances& tol) {
  require_same_dim(t0.dim(), t1.dim(), "perturbation_determinant");
  if (std::abs(zeta) < 1.0 + 1e-8) throw Error(ErrorKind::InvalidParameter, "|zeta| must exceed 1");
  const Index n = t0.dim();
  const ComplexMatrix shifted = t0.matrix() - zeta * identity(n);
  const double cond = condition_number(shifted);
  if (!(cond <= tol.max_condition))
    throw Error(ErrorKind::NearSingular, "T0 - zeta I has condition number " + std::to_string(cond));
  const ComplexMatrix resolvent = shifted.partialPivLu().inverse();
  const ComplexMatrix m = identity(n) + (t1.matrix() - t0.matrix()) * resolvent;
  return m.partialPivLu().determinant();
}

SampledSSF determinant_ssf(const Contraction& t0, const Contraction& t1, const DeterminantOptions& opt,
                           const Tolerances& tol) {
  if (opt.radius < 1.0 + 1e-8) throw Error(ErrorKind::InvalidParameter, "radius must exceed 1");
  if (opt.grid < 256) throw Error(ErrorKind::InvalidParameter, "grid needs at least 256 points");

  const double guard = kPi * (1.0 - 1e-3);
  std::size_t n = opt.grid;
  int refinements = 0;
  for (;;) {
    std::vector<Complex> delta(n);
    parallel_for(n, [&](std::size_t j) {
      const double theta = kTwoPi * static_cast<double>(j + 1) / static_cast<double>(n);
      delta[j] = perturbation_determinant(t0, t1, std::polar(opt.radius, theta), tol);
    });

    std::vector<double> s(n);
    s[0] = std::arg(delta[0]);
    bool ambiguous = false;
    for (std::size_t j = 1; j < n && !ambiguous; ++j) {
      const double d = phase_step(delta[j], delta[j - 1]);
      if (std::fabs(d) > guard) ambiguous = true;
      s[j] = s[j - 1] + d;
    }
    const double closing = phase_step(delta[0], delta[n - 1]);
    ambiguous = ambiguous || std::fabs(closing) > guard;
    if (ambiguous) {
      if (2 * n > opt.max_grid)
        throw Error(ErrorKind::UnwrapAmbiguity,
                    "phase jump above the unwrap threshold at grid " + std::to_string(n));
      n *= 2;
      ++refinements;
      continue;
    }

    const double total = s[n - 1] - s[0] + closing;
    const int winding = static_cast<int>(std::lround(total / kTwoPi));
    if (winding != 0)
      throw Error(ErrorKind::NonzeroWinding, "winding number " + std::to_string(winding));

    SampledSSF out;
    out.radius = opt.radius;
    out.kappa = kDeterminantSign;
    out.winding = winding;
    out.refinements = refinements;
    out.thetas.resize(n);
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.thetas[j] = kTwoPi * static_cast<double>(j + 1) / static_cast<double>(n);
      out.values[j] = out.kappa * s[j] / kPi;
    }
    const double mean = std::accumulate(out.values.begin(), out.values.end(), 0.0) / static_cast<double>(n);
    out.gauge = -mean;
    for (double& v : out.values) v += out.gauge;
    return out;
  }
}

Complex sampled_trace_integral(const SampledSSF& ssf, const Polynomial& f) {
  // f'(zeta) xi dzeta = i zeta f'(zeta) xi dtheta
  return kI * circle_trapezoid(shifted(derivative(f), 1), ssf.values);
}

HardyGaugeResult hardy_gauge_check(const StepSSF& ssf, std::size_t k, const Polynomial& f,
                                   std::size_t samples) {
  if (samples == 0) throw Error(ErrorKind::InvalidParameter, "no quadrature samples");
  HardyGaugeResult out;
  const std::vector<double> ones(samples, 1.0);
  out.perturbation = kI * circle_trapezoid(shifted(derivative(f), k + 1), ones);
  out.base = ssf_trace_integral(ssf, f);
  out.shifted = out.base + out.perturbation;
  return out;
}

ComplexMatrix hermitian_inverse_power(const ComplexMatrix& d, double s, double floor) {
  require_square(d, "hermitian_inverse_power");
  if (s == 0.0) return identity(d.rows());
  const HermitianEigen e = hermitian_eigen(d);
  if (e.values.size() > 0 && e.values(0) < floor)
    throw Error(ErrorKind::KernelViolation,
                "eigenvalue " + std::to_string(e.values(0)) + " below the inverse-power floor");
  RealVector p(e.values.size());
  for (Index k = 0; k < p.size(); ++k) p(k) = std::pow(e.values(k), -s);
  return e.vectors * p.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

RealSsfConditions real_ssf_conditions_report(const Contraction& t0, const Contraction& t1, double alpha,
                                             double beta, double p, const Tolerances& tol) {
  require_same_dim(t0.dim(), t1.dim(), "real_ssf_conditions_report");
  if (alpha < 0.0 || beta < 0.0 || !(alpha + beta > 0.5 && alpha + beta <= 1.0))
    throw Error(ErrorKind::InvalidParameter, "need alpha, beta >= 0 and alpha + beta in (1/2, 1]");

  const DefectPair d0 = defect_operators(t0, tol);
  const DefectPair d1 = defect_operators(t1, tol);
  const ComplexMatrix dt = t1.matrix() - t0.matrix();

  RealSsfConditions r;
  const RealVector ev = hermitian_eigenvalues(d0.d_t);
  r.min_eig_d_t0 = ev.size() ? ev(0) : 0.0;
  r.kernel_certified = r.min_eig_d_t0 > 1e-8;
  r.kernel_violation = r.min_eig_d_t0 < 1e-12;
  r.defect_difference = schatten_norm(d1.d_t - d0.d_t, p);
  r.defect_star_difference = schatten_norm(d1.d_t_star - d0.d_t_star, p);

  const ComplexMatrix x = d0.d_t * d0.d_t;
  const ComplexMatrix y = d1.d_t * d1.d_t;
  const ComplexMatrix rhs = -dt.adjoint() * t0.matrix() - t1.matrix().adjoint() * dt;
  r.identity_residual = frobenius((y - x) - rhs);

  if (r.kernel_violation) {
    r.note = "Ker D_T0 is numerically nontrivial; weighted norms unavailable";
    return r;
  }
  try {
    const ComplexMatrix right = hermitian_inverse_power(d0.d_t, 2.0 * alpha);
    r.weighted_difference = schatten_norm(hermitian_inverse_power(d1.d_t_star, 2.0 * beta) * dt * right, p);
    r.weighted_adjoint_difference =
        schatten_norm(hermitian_inverse_power(d1.d_t, 2.0 * beta) * dt.adjoint() * right, p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::KernelViolation) throw;
    r.weighted_difference.reset();
    r.weighted_adjoint_difference.reset();
    r.note = "defect of T1 is singular; weighted norms unavailable";
  }
  return r;
}

StepSampleComparison compare_sampled_to_step(const SampledSSF& sampled, const StepSSF& step,
                                             double min_distance) {
  StepSampleComparison out;
  for (std::size_t j = 0; j < sampled.thetas.size(); ++j) {
    const double theta = sampled.thetas[j];
    bool near_jump = false;
    for (const Jump& jump : step.jumps()) {
      if (circular_distance(theta, jump.theta) < min_distance) {
        near_jump = true;
        break;
      }
    }
    if (near_jump) continue;
    out.max_deviation = std::max(out.max_deviation, std::fabs(sampled.values[j] - step.value(theta)));
    ++out.compared;
  }
  return out;
}

}  // namespace ssf
