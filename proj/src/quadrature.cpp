#include "ssf/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "ssf/error.hpp"

namespace ssf::quad {

namespace {

Rule golub_welsch(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "quadrature rule needs n >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw Error(ErrorKind::InvalidParameter, "Jacobi exponents must be > -1");

  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    jm(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double t = 2.0 * kk + ab;
      double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab);
      double den = t * t * (t + 1.0) * (t - 1.0);
      const double off = std::sqrt(num / den);
      jm(k, k + 1) = off;
      jm(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "Golub-Welsch eigensolver");

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  Rule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    r.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    r.weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace

Rule gauss_jacobi(int n, double alpha, double beta) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, Rule> cache;
  const auto key = std::make_tuple(n, alpha, beta);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rule r = golub_welsch(n, alpha, beta);
  if (alpha == 0.0 && beta == 0.0) {
    // Legendre nodes are symmetric; enforce it exactly.
    for (int k = 0; k < n / 2; ++k) {
      const auto lo = static_cast<std::size_t>(k);
      const auto hi = static_cast<std::size_t>(n - 1 - k);
      const double x = 0.5 * (r.nodes[hi] - r.nodes[lo]);
      const double w = 0.5 * (r.weights[hi] + r.weights[lo]);
      r.nodes[lo] = -x;
      r.nodes[hi] = x;
      r.weights[lo] = r.weights[hi] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(r)).first->second;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule mapped_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    r.nodes[k] = c + h * r.nodes[k];
    r.weights[k] *= h;
  }
  return r;
}

Rule left_singular(int n, double beta, double a, double b) {
  Rule r = gauss_jacobi(n, 0.0, beta);
  const double h = 0.5 * (b - a);
  const double scale = std::pow(h, 1.0 + beta);
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    r.nodes[k] = a + h * (1.0 + r.nodes[k]);
    r.weights[k] *= scale;
  }
  return r;
}

}  // namespace ssf::quad
