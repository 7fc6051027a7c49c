#pragma once

// Dense complex linear algebra: validated operator classes, spectral
// decompositions, Schatten norms, defect operators and Cayley transforms.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

#include "ssf/polynomial.hpp"

namespace ssf {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;
inline constexpr Complex kI{0.0, 1.0};

/// Validation thresholds. Defaults follow the library contract; scenarios may
/// override any of them.
struct Tolerances {
  double contraction = 1e-8;         // s_max <= 1 + contraction
  double unitary = 1e-10;            // ||U*U - I||_F
  double dissipative = 1e-10;        // lambda_min(Im L) >= -dissipative
  double hermitian = 1e-12;          // ||A - A*||_F, relative to max(1, ||A||_F)
  double sqrt_clamp = 1e-8;          // eigenvalues in [-sqrt_clamp, 0) are clamped
  double phase_cluster = 1e-9;       // circular distance merging eigenphases
  double max_condition = 1e12;
  double one_point = 1e-10;          // s_min(I - T) for the inverse Cayley map
};

// --- basic helpers ---------------------------------------------------------

ComplexMatrix identity(Index n);
bool all_finite(const ComplexMatrix& a);
double frobenius(const ComplexMatrix& a);
double hermitian_residual(const ComplexMatrix& a);
ComplexMatrix adjoint(const ComplexMatrix& a);
/// (A - A*) / (2i)
ComplexMatrix imaginary_part(const ComplexMatrix& a);

/// Singular values, descending.
RealVector singular_values(const ComplexMatrix& a);
double spectral_norm(const ComplexMatrix& a);
double condition_number(const ComplexMatrix& a);

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

/// Eigendecomposition of a Hermitian matrix (symmetrized first). Purely real
/// inputs take the real symmetric path.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// V f(Lambda) V* for Hermitian input.
ComplexMatrix hermitian_function(const ComplexMatrix& a, const std::function<double(double)>& f);

/// All eigenvalues of a general complex matrix (complex Schur / QR iteration).
ComplexVector eigenvalues(const ComplexMatrix& a);

// --- validated operator classes -------------------------------------------

class Contraction {
 public:
  explicit Contraction(ComplexMatrix m, const Tolerances& tol = {});
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double norm() const noexcept { return norm_; }

 private:
  ComplexMatrix m_;
  double norm_ = 0.0;
};

class Unitary {
 public:
  explicit Unitary(ComplexMatrix m, const Tolerances& tol = {});
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  /// Every unitary is a contraction.
  Contraction as_contraction() const;

 private:
  ComplexMatrix m_;
};

class Dissipative {
 public:
  explicit Dissipative(ComplexMatrix m, const Tolerances& tol = {});
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  /// Smallest eigenvalue of Im L recorded at validation.
  double min_imaginary_eigenvalue() const noexcept { return min_im_; }

 private:
  ComplexMatrix m_;
  double min_im_ = 0.0;
};

struct DefectPair {
  ComplexMatrix d_t;       // (I - T*T)^{1/2}
  ComplexMatrix d_t_star;  // (I - TT*)^{1/2}
};

struct Eigenphase {
  double phase;  // in (0, 2pi]
  int multiplicity;
};

struct PolarFactors {
  ComplexMatrix isometry;  // V, unitary (completed arbitrarily on the kernel)
  ComplexMatrix modulus;   // |A| = (A*A)^{1/2}
  bool rank_deficient = false;
};

struct VonNeumannCheck {
  double operator_norm;  // ||f(T)||
  double sup_norm;       // max over the closed disk of |f|, sampled on the circle
  bool holds;
};

/// Cayley transform together with the conditioning of L + iI.
struct CayleyResult {
  Contraction t;
  double condition;
};

// --- operations ------------------------------------------------------------

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerances& tol = {});

/// (sum_j s_j^p)^{1/p}; p = infinity gives the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);

std::vector<Eigenphase> eigenphases(const Unitary& u, const Tolerances& tol = {});
/// Flattened phases, each repeated by multiplicity.
std::vector<double> eigenphase_list(const Unitary& u, const Tolerances& tol = {});

DefectPair defect_operators(const Contraction& t, const Tolerances& tol = {});

PolarFactors polar_factors(const ComplexMatrix& a);

/// Horner evaluation of sum_k c_k T^k.
ComplexMatrix analytic_poly_eval(const ComplexMatrix& t, const Polynomial& coeffs);
VonNeumannCheck von_neumann_check(const Contraction& t, const Polynomial& coeffs,
                                  std::size_t circle_samples = 4096);

CayleyResult cayley(const Dissipative& l, const Tolerances& tol = {});
Dissipative inverse_cayley(const Contraction& t, const Tolerances& tol = {});

/// sum_k s_k log(1 + 1/s_k) over singular values of T1 - T0 (0 log inf := 0).
double an_log_sum(const Contraction& t0, const Contraction& t1);

/// max_j |s_j(T1 T2) - s_j(T2 T1)| for Hermitian T1, T2.
double singular_value_commute_check(const ComplexMatrix& t1, const ComplexMatrix& t2,
                                    const Tolerances& tol = {});

void require_square(const ComplexMatrix& a, const char* what);
void require_same_dim(Index a, Index b, const char* what);

}  // namespace ssf
