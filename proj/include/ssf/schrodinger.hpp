#pragma once

// Green kernels of the free 1D Hamiltonian, Nystrom discretizations of
// q^{1/2} R q^{1/2}, and finite-difference dissipative Schrodinger pairs.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ssf/linalg.hpp"

namespace ssf {

enum class GridScheme { GaussLegendre, Trapezoid };

struct Grid1D {
  std::vector<double> points;
  std::vector<double> weights;
  GridScheme scheme = GridScheme::GaussLegendre;
  double lo = 0.0, hi = 0.0;
  int panel_size = 16;

  std::size_t size() const noexcept { return points.size(); }
  /// Checks ordering, positivity of weights and that they sum to hi - lo.
  void validate() const;
};

/// Composite Gauss-Legendre with panel_size-point panels; nodes must be a
/// multiple of panel_size.
Grid1D gauss_legendre_grid(double lo, double hi, std::size_t nodes, int panel_size = 16);
Grid1D trapezoid_grid(double lo, double hi, std::size_t nodes);

/// -(1/(2i sqrt z)) exp(i |x - t| sqrt z) with Im sqrt z > 0.
Complex green_kernel(double x, double t, Complex z);

struct PotentialDescriptor {
  enum class Kind { Gaussian, Bump, Table } kind = Kind::Gaussian;
  // Gaussian: amplitude * exp(-((x - center) / width)^2)
  // Bump: amplitude on |x - center| <= half_width - ramp/2, smooth ramp of
  //       width `ramp`; integral is exactly 2 * half_width * amplitude.
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  double half_width = 1.0;
  double ramp = 0.5;
  // Table: piecewise linear through (xs, qs), zero outside.
  std::vector<double> xs, qs;

  double operator()(double x) const;
  /// Integral over the real line.
  double l1_norm() const;
  std::vector<double> sample(const Grid1D& grid) const;
};

struct NystromKernel {
  Grid1D grid;
  ComplexMatrix matrix;
};

using KernelFunction = std::function<Complex(double, double)>;

NystromKernel nystrom_kernel(const std::vector<double>& q, const KernelFunction& r, const Grid1D& grid);
/// Nystrom kernel for R = G(., .; z). Negative real z uses the vectorized
/// exponential row fill.
NystromKernel nystrom_green_kernel(const std::vector<double>& q, const Grid1D& grid, Complex z = Complex{-1.0, 0.0});

struct KuzyaReport {
  double trace;
  double s1_norm;
  double min_eigenvalue;
  double diagonal_integral;  // sum_j w_j q(x_j) R(x_j, x_j)
  double closed_form;        // (1/2) ||q||_1 for z = -1
};

KuzyaReport kuzya_trace_report(const PotentialDescriptor& q, const Grid1D& grid, Complex z = Complex{-1.0, 0.0});

enum class MonotoneVariant { Multiplicative, Truncation };

struct MonotoneReport {
  std::vector<int> n;
  std::vector<double> approx_norm;  // ||K_n||_1
  std::vector<double> gap_norm;     // ||K - K_n||_1
  double full_norm;                 // ||K||_1
  bool approx_nondecreasing;
  bool gap_nonincreasing;
  bool final_gap_within_bound;      // gap_last <= ||K||_1 / n_last + 1e-10
};

MonotoneReport monotone_s1_check(const PotentialDescriptor& q, const Grid1D& grid, const std::vector<int>& n_list,
                                 MonotoneVariant variant = MonotoneVariant::Multiplicative);

/// Trace norm of a Hermitian matrix from its eigenvalues.
double hermitian_trace_norm(const ComplexMatrix& a);

/// tridiag(-1, 2, -1) / h^2 with Dirichlet boundary.
ComplexMatrix dirichlet_laplacian(std::size_t n, double h);

std::pair<Dissipative, Dissipative> discrete_schrodinger_pair(const std::vector<Complex>& q, double h,
                                                              const Tolerances& tol = {});

}  // namespace ssf
