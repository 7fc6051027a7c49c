#include "ssf/fractional.hpp"

#include <algorithm>
#include <cmath>

#include "ssf/error.hpp"
#include "ssf/parallel.hpp"
#include "ssf/quadrature.hpp"

namespace ssf {

namespace {

double smallest_eigenvalue(const ComplexMatrix& a) {
  const RealVector ev = hermitian_eigenvalues(a);
  return ev.size() ? ev(0) : 0.0;
}

void require_unit_spectrum(const ComplexMatrix& a, const char* what, const Tolerances& tol) {
  require_square(a, what);
  if (hermitian_residual(a) > tol.hermitian * std::max(1.0, a.norm()))
    throw Error(ErrorKind::NotHermitian, std::string(what) + " is not Hermitian");
  const RealVector ev = hermitian_eigenvalues(a);
  if (ev.size() && (ev(0) < -1e-10 || ev(ev.size() - 1) > 1.0 + 1e-10))
    throw Error(ErrorKind::IndefiniteInput, std::string(what) + " spectrum leaves [0, 1]");
}

ComplexMatrix hermitian_power(const ComplexMatrix& a, double s) {
  const HermitianEigen e = hermitian_eigen(a);
  RealVector p(e.values.size());
  for (Index k = 0; k < p.size(); ++k) p(k) = std::pow(std::max(e.values(k), 0.0), s);
  return e.vectors * p.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

/// Rule for integral_0^1 t^sigma g(t) dt: a Gauss-Jacobi panel on [0, lambda]
/// and geometrically graded Gauss-Legendre panels on [lambda, 1].
quad::Rule lower_rule(int n, double sigma, double lambda) {
  const int panels = std::max(2, n / 10);
  quad::Rule out;
  auto take = [&](int k) { return n / panels + (k < n % panels ? 1 : 0); };
  const quad::Rule head = quad::left_singular(take(0), sigma, 0.0, lambda);
  out.nodes = head.nodes;
  out.weights = head.weights;
  const int graded = panels - 1;
  for (int k = 0; k < graded; ++k) {
    const double a = lambda * std::pow(1.0 / lambda, static_cast<double>(k) / graded);
    const double b = lambda * std::pow(1.0 / lambda, static_cast<double>(k + 1) / graded);
    const quad::Rule r = quad::mapped_legendre(take(k + 1), a, k + 1 == graded ? 1.0 : b);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      out.nodes.push_back(r.nodes[j]);
      out.weights.push_back(r.weights[j] * std::pow(r.nodes[j], sigma));
    }
  }
  return out;
}

/// Rule for integral_0^1 s^{-sigma} g(s) ds: Gauss-Jacobi on [0, 1/2], then
/// Gauss-Legendre on [1/2, 1].
quad::Rule upper_rule(int n, double sigma) {
  const int head_n = (n + 1) / 2;
  quad::Rule out = quad::left_singular(head_n, -sigma, 0.0, 0.5);
  const quad::Rule tail = quad::mapped_legendre(n - head_n, 0.5, 1.0);
  for (std::size_t j = 0; j < tail.nodes.size(); ++j) {
    out.nodes.push_back(tail.nodes[j]);
    out.weights.push_back(tail.weights[j] * std::pow(tail.nodes[j], -sigma));
  }
  return out;
}

ComplexMatrix pairwise_sum(const std::vector<ComplexMatrix>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

}  // namespace

double c_sigma(double sigma) { return std::sin(kPi * sigma) / kPi; }

FractionalJob::FractionalJob(ComplexMatrix x, ComplexMatrix y, double sigma, double alpha, double beta,
                             double p, const Tolerances& tol)
    : x_(std::move(x)), y_(std::move(y)), sigma_(sigma), alpha_(alpha), beta_(beta), p_(p) {
  require_same_dim(x_.rows(), y_.rows(), "fractional job");
  require_unit_spectrum(x_, "X", tol);
  require_unit_spectrum(y_, "Y", tol);
  if (!(sigma > 0.0 && sigma < 1.0)) throw Error(ErrorKind::InvalidParameter, "sigma must lie in (0, 1)");
  if (alpha < 0.0 || beta < 0.0) throw Error(ErrorKind::InvalidParameter, "alpha and beta must be >= 0");
  if (!(alpha + beta > 1.0 - sigma && alpha + beta <= 1.0))
    throw Error(ErrorKind::InvalidParameter, "alpha + beta must lie in (1 - sigma, 1]");
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidExponent, "Schatten exponent below 1");
  min_eig_ = std::min(smallest_eigenvalue(x_), smallest_eigenvalue(y_));
}

ComplexMatrix fractional_power(const ComplexMatrix& x, double sigma, const Tolerances& tol) {
  require_square(x, "fractional_power");
  if (hermitian_residual(x) > tol.hermitian * std::max(1.0, x.norm()))
    throw Error(ErrorKind::NotHermitian, "fractional_power input");
  if (smallest_eigenvalue(x) < -1e-10) throw Error(ErrorKind::IndefiniteInput, "negative eigenvalue");
  return hermitian_power(x, sigma);
}

ComplexMatrix fractional_diff_fixed(const FractionalJob& job, int nodes) {
  if (nodes < 32) throw Error(ErrorKind::InvalidParameter, "need at least 32 nodes");
  const Index n = job.x().rows();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix diff = job.y() - job.x();
  const double sigma = job.sigma();
  const double lambda = std::clamp(job.min_eigenvalue(), 1e-12, 0.5);

  const int lower_n = nodes / 2;
  const quad::Rule lower = lower_rule(lower_n, sigma, lambda);
  const quad::Rule upper = upper_rule(nodes - lower_n, sigma);

  const std::size_t nl = lower.nodes.size();
  std::vector<ComplexMatrix> terms(nl + upper.nodes.size());
  parallel_for(terms.size(), [&](std::size_t j) {
    if (j < nl) {
      // (tI + Y)^{-1} (Y - X) (tI + X)^{-1}
      const double t = lower.nodes[j];
      const ComplexMatrix left = (job.y() + t * id).partialPivLu().solve(diff);
      const ComplexMatrix full = (job.x() + t * id).transpose().partialPivLu().solve(left.transpose()).transpose();
      terms[j] = lower.weights[j] * full;
    } else {
      // t = 1/s: (I + sY)^{-1} (Y - X) (I + sX)^{-1}
      const double s = upper.nodes[j - nl];
      const ComplexMatrix left = (id + s * job.y()).partialPivLu().solve(diff);
      const ComplexMatrix full = (id + s * job.x()).transpose().partialPivLu().solve(left.transpose()).transpose();
      terms[j] = upper.weights[j - nl] * full;
    }
  });
  if (terms.empty()) return ComplexMatrix::Zero(n, n);
  return c_sigma(sigma) * pairwise_sum(terms, 0, terms.size());
}

FractionalQuadrature fractional_diff_quadrature(const FractionalJob& job, int nodes, int max_doublings) {
  ComplexMatrix prev = fractional_diff_fixed(job, nodes);
  double change = 0.0;
  for (int k = 0; k < max_doublings; ++k) {
    nodes *= 2;
    ComplexMatrix next = fractional_diff_fixed(job, nodes);
    change = frobenius(next - prev);
    if (change <= 1e-8 * std::max(1.0, frobenius(next)))
      return {std::move(next), nodes, change, job.ill_conditioned()};
    prev = std::move(next);
  }
  throw Error(ErrorKind::QuadratureDivergence,
              "successive rules still differ by " + std::to_string(change) + " at " + std::to_string(nodes) +
                  " nodes");
}

FyoklaReport fyokla_bound_report(const FractionalJob& job, bool corollary) {
  if (job.min_eigenvalue() < 1e-10)
    throw Error(ErrorKind::KernelViolation, "X or Y is numerically singular");
  const double sigma = job.sigma(), p = job.p();
  const ComplexMatrix diff = job.y() - job.x();
  FyoklaReport r{};
  r.c = c_sigma(sigma);
  r.lhs = schatten_norm(hermitian_power(job.y(), sigma) - hermitian_power(job.x(), sigma), p);
  r.weighted = schatten_norm(hermitian_power(job.y(), -job.beta()) * diff * hermitian_power(job.x(), -job.alpha()), p);
  r.difference = schatten_norm(diff, p);
  r.bound = r.c / (job.alpha() + job.beta() + sigma - 1.0) * r.weighted + r.c / (1.0 - sigma) * r.difference;
  r.holds = r.lhs <= r.bound + 1e-10;
  if (corollary) {
    const double w = schatten_norm(diff * hermitian_power(job.x(), -1.0), p);
    r.corollary_bound = r.c / sigma * w + r.c / (1.0 - sigma) * r.difference;
  }
  return r;
}

double resolvent_difference_identity_check(const ComplexMatrix& x, const ComplexMatrix& y, double t) {
  require_same_dim(x.rows(), y.rows(), "resolvent_difference_identity_check");
  if (t < 1e-8) throw Error(ErrorKind::InvalidParameter, "t must be at least 1e-8");
  const ComplexMatrix id = identity(x.rows());
  const ComplexMatrix ry = (t * id + y).inverse();
  const ComplexMatrix rx = (t * id + x).inverse();
  return frobenius(y * ry - x * rx - t * ry * (y - x) * rx);
}

ResolventNormSlack resolvent_norm_slack(const ComplexMatrix& x, const ComplexMatrix& y, double sigma,
                                        double alpha, double t) {
  const ComplexMatrix id = identity(x.rows());
  ResolventNormSlack s{};
  s.power_slack = std::pow(t, sigma - 1.0) - spectral_norm(std::pow(t, sigma) * (t * id + y).inverse());
  s.weighted_slack = std::pow(t, alpha - 1.0) - spectral_norm(hermitian_power(x, alpha) * (t * id + x).inverse());
  return s;
}

}  // namespace ssf
