#include "ssf/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "ssf/error.hpp"
#include "ssf/parallel.hpp"
#include "ssf/quadrature.hpp"
#include "ssf/simd/kernels.hpp"

namespace ssf {

namespace {

double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

std::vector<double> checked_potential(const std::vector<double>& q, std::size_t n) {
  if (q.size() != n) throw Error(ErrorKind::DimensionMismatch, "potential samples do not match the grid");
  std::vector<double> out(q);
  for (double& v : out) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "potential sample");
    if (v < -1e-14) throw Error(ErrorKind::NegativePotential, "potential value " + std::to_string(v));
    v = std::max(v, 0.0);
  }
  return out;
}

std::vector<double> scaled_roots(const std::vector<double>& q, const Grid1D& grid) {
  std::vector<double> s(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) s[j] = std::sqrt(grid.weights[j] * q[j]);
  return s;
}

}  // namespace

void Grid1D::validate() const {
  if (points.empty() || points.size() != weights.size())
    throw Error(ErrorKind::InvalidParameter, "grid needs matching nonempty points and weights");
  double total = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (!(weights[j] > 0.0)) throw Error(ErrorKind::InvalidParameter, "grid weights must be positive");
    if (j > 0 && !(points[j] > points[j - 1]))
      throw Error(ErrorKind::InvalidParameter, "grid points must be strictly increasing");
    if (points[j] < lo || points[j] > hi) throw Error(ErrorKind::InvalidParameter, "grid point outside domain");
    total += weights[j];
  }
  if (std::fabs(total - (hi - lo)) > 1e-12 * std::max(1.0, hi - lo))
    throw Error(ErrorKind::InvalidParameter, "grid weights do not sum to the domain length");
}

Grid1D gauss_legendre_grid(double lo, double hi, std::size_t nodes, int panel_size) {
  if (!(hi > lo) || panel_size < 1 || nodes == 0 || nodes % static_cast<std::size_t>(panel_size) != 0)
    throw Error(ErrorKind::InvalidParameter, "Gauss-Legendre grid needs hi > lo and nodes a multiple of the panel size");
  Grid1D g;
  g.scheme = GridScheme::GaussLegendre;
  g.lo = lo;
  g.hi = hi;
  g.panel_size = panel_size;
  const std::size_t panels = nodes / static_cast<std::size_t>(panel_size);
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + h;
    const quad::Rule r = quad::mapped_legendre(panel_size, a, b);
    g.points.insert(g.points.end(), r.nodes.begin(), r.nodes.end());
    g.weights.insert(g.weights.end(), r.weights.begin(), r.weights.end());
  }
  g.validate();
  return g;
}

Grid1D trapezoid_grid(double lo, double hi, std::size_t nodes) {
  if (!(hi > lo) || nodes < 2) throw Error(ErrorKind::InvalidParameter, "trapezoid grid needs hi > lo and 2 nodes");
  Grid1D g;
  g.scheme = GridScheme::Trapezoid;
  g.lo = lo;
  g.hi = hi;
  g.panel_size = 1;
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  for (std::size_t j = 0; j < nodes; ++j) {
    g.points.push_back(j + 1 == nodes ? hi : lo + h * static_cast<double>(j));
    g.weights.push_back(j == 0 || j + 1 == nodes ? 0.5 * h : h);
  }
  g.validate();
  return g;
}

Complex green_kernel(double x, double t, Complex z) {
  const double dist = z.real() >= 0.0 ? std::fabs(z.imag()) : std::abs(z);
  if (dist <= 1e-12) throw Error(ErrorKind::BranchCut, "z lies on the spectrum [0, inf)");
  Complex w = std::sqrt(z);
  if (w.imag() < 0.0) w = -w;
  return -std::exp(kI * std::fabs(x - t) * w) / (2.0 * kI * w);
}

double PotentialDescriptor::operator()(double x) const {
  switch (kind) {
    case Kind::Gaussian: {
      const double u = (x - center) / width;
      return amplitude * std::exp(-u * u);
    }
    case Kind::Bump: {
      const double r = std::fabs(x - center);
      if (ramp <= 0.0) return r <= half_width ? amplitude : 0.0;
      return amplitude * smoothstep((half_width + 0.5 * ramp - r) / ramp);
    }
    case Kind::Table: {
      if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      if (it == xs.end()) return qs.back();
      const std::size_t k = static_cast<std::size_t>(it - xs.begin());
      const double u = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
      return (1.0 - u) * qs[k - 1] + u * qs[k];
    }
  }
  return 0.0;
}

double PotentialDescriptor::l1_norm() const {
  switch (kind) {
    case Kind::Gaussian:
      return std::fabs(amplitude) * width * std::sqrt(kPi);
    case Kind::Bump:
      return 2.0 * half_width * std::fabs(amplitude);
    case Kind::Table: {
      double acc = 0.0;
      for (std::size_t k = 1; k < xs.size(); ++k) {
        const double a = qs[k - 1], b = qs[k], h = xs[k] - xs[k - 1];
        if (a * b >= 0.0) {
          acc += 0.5 * h * std::fabs(a + b);
        } else {
          const double c = h * std::fabs(a) / (std::fabs(a) + std::fabs(b));
          acc += 0.5 * (c * std::fabs(a) + (h - c) * std::fabs(b));
        }
      }
      return acc;
    }
  }
  return 0.0;
}

std::vector<double> PotentialDescriptor::sample(const Grid1D& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = (*this)(grid.points[j]);
  return out;
}

NystromKernel nystrom_kernel(const std::vector<double>& q_in, const KernelFunction& r, const Grid1D& grid) {
  const std::vector<double> q = checked_potential(q_in, grid.size());
  const std::vector<double> s = scaled_roots(q, grid);
  const Index n = static_cast<Index>(grid.size());
  NystromKernel k{grid, ComplexMatrix::Zero(n, n)};
  parallel_for(grid.size(), [&](std::size_t i) {
    if (s[i] == 0.0) return;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (s[j] == 0.0) continue;
      k.matrix(static_cast<Index>(i), static_cast<Index>(j)) = s[i] * r(grid.points[i], grid.points[j]) * s[j];
    }
  });
  return k;
}

NystromKernel nystrom_green_kernel(const std::vector<double>& q_in, const Grid1D& grid, Complex z) {
  if (!(z.imag() == 0.0 && z.real() < 0.0))
    return nystrom_kernel(q_in, [z](double x, double t) { return green_kernel(x, t, z); }, grid);
  const std::vector<double> q = checked_potential(q_in, grid.size());
  const std::vector<double> s = scaled_roots(q, grid);
  const std::size_t n = grid.size();
  const double kappa = std::sqrt(-z.real());
  const double scale = 1.0 / (2.0 * kappa);
  Eigen::MatrixXd real(static_cast<Index>(n), static_cast<Index>(n));
  const auto& kernels = simd::active();
  // Column-major storage: column j holds row j by symmetry.
  parallel_for(n, [&](std::size_t j) {
    std::span<double> col(real.data() + j * n, n);
    kernels.exp_decay_row(grid.points[j], s[j], grid.points, s, kappa, scale, col);
  });
  return NystromKernel{grid, real.cast<Complex>()};
}

double hermitian_trace_norm(const ComplexMatrix& a) { return hermitian_eigenvalues(a).cwiseAbs().sum(); }

KuzyaReport kuzya_trace_report(const PotentialDescriptor& q, const Grid1D& grid, Complex z) {
  const std::vector<double> qv = q.sample(grid);
  const NystromKernel k = nystrom_green_kernel(qv, grid, z);
  KuzyaReport r{};
  r.trace = k.matrix.trace().real();
  const RealVector ev = hermitian_eigenvalues(k.matrix);
  r.s1_norm = ev.cwiseAbs().sum();
  r.min_eigenvalue = ev.size() ? ev(0) : 0.0;
  const Complex diag = green_kernel(0.0, 0.0, z);
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) acc += grid.weights[j] * qv[j];
  r.diagonal_integral = acc * diag.real();
  r.closed_form = 0.5 * q.l1_norm();
  return r;
}

MonotoneReport monotone_s1_check(const PotentialDescriptor& q, const Grid1D& grid, const std::vector<int>& n_list,
                                 MonotoneVariant variant) {
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < 1 || (k > 0 && n_list[k] <= n_list[k - 1]))
      throw Error(ErrorKind::InvalidParameter, "n_list must be positive and strictly increasing");
  }
  const std::vector<double> qv = q.sample(grid);
  const ComplexMatrix full = nystrom_green_kernel(qv, grid).matrix;
  MonotoneReport r{};
  r.full_norm = hermitian_trace_norm(full);
  for (int n : n_list) {
    std::vector<double> phi(qv);
    for (double& v : phi) v = variant == MonotoneVariant::Multiplicative ? v * (1.0 - 1.0 / n) : std::min(v, double(n));
    const ComplexMatrix kn = nystrom_green_kernel(phi, grid).matrix;
    r.n.push_back(n);
    r.approx_norm.push_back(hermitian_trace_norm(kn));
    r.gap_norm.push_back(hermitian_trace_norm(full - kn));
  }
  r.approx_nondecreasing = true;
  r.gap_nonincreasing = true;
  for (std::size_t k = 1; k < r.n.size(); ++k) {
    if (r.approx_norm[k] < r.approx_norm[k - 1] - 1e-12) r.approx_nondecreasing = false;
    if (r.gap_norm[k] > r.gap_norm[k - 1] + 1e-12) r.gap_nonincreasing = false;
  }
  r.final_gap_within_bound = r.n.empty() || r.gap_norm.back() <= r.full_norm / r.n.back() + 1e-10;
  return r;
}

ComplexMatrix dirichlet_laplacian(std::size_t n, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParameter, "grid spacing must be positive");
  const Index m = static_cast<Index>(n);
  ComplexMatrix d = ComplexMatrix::Zero(m, m);
  const double c = 1.0 / (h * h);
  for (Index j = 0; j < m; ++j) {
    d(j, j) = 2.0 * c;
    if (j + 1 < m) {
      d(j, j + 1) = -c;
      d(j + 1, j) = -c;
    }
  }
  return d;
}

std::pair<Dissipative, Dissipative> discrete_schrodinger_pair(const std::vector<Complex>& q, double h,
                                                              const Tolerances& tol) {
  if (q.empty()) throw Error(ErrorKind::InvalidParameter, "empty potential");
  for (const Complex& v : q) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error(ErrorKind::NonFinite, "potential sample");
    if (v.imag() < -1e-12)
      throw Error(ErrorKind::DissipativityViolation, "Im q = " + std::to_string(v.imag()) + " < 0");
  }
  const Index n = static_cast<Index>(q.size());
  const ComplexMatrix base = Complex{1.0, 1.0} * dirichlet_laplacian(q.size(), h);
  ComplexMatrix l0 = base + kI * identity(n);
  ComplexMatrix l1 = base;
  for (Index j = 0; j < n; ++j) l1(j, j) += kI + q[static_cast<std::size_t>(j)];
  return {Dissipative(std::move(l0), tol), Dissipative(std::move(l1), tol)};
}

}  // namespace ssf
