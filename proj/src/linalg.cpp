#include "ssf/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssf/error.hpp"
#include "ssf/simd/kernels.hpp"

namespace ssf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::IndefiniteInput: return "IndefiniteInput";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::OnePointSpectrum: return "OnePointSpectrum";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotDissipative: return "NotDissipative";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnwrapAmbiguity: return "UnwrapAmbiguity";
    case ErrorKind::NonzeroWinding: return "NonzeroWinding";
    case ErrorKind::KernelViolation: return "KernelViolation";
    case ErrorKind::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::NegativePotential: return "NegativePotential";
    case ErrorKind::DissipativityViolation: return "DissipativityViolation";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN/Inf entries");
}

}  // namespace

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be square, got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": dimensions " +
                                                  std::to_string(a) + " and " + std::to_string(b));
  }
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      const Complex& z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

double frobenius(const ComplexMatrix& a) { return a.norm(); }

double hermitian_residual(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix imaginary_part(const ComplexMatrix& a) {
  return (a - a.adjoint()) / (2.0 * kI);
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector{};
  if (a.rows() <= 16 && a.cols() <= 16) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& a) {
  RealVector s = singular_values(a);
  return s.size() ? s(0) : 0.0;
}

double condition_number(const ComplexMatrix& a) {
  RealVector s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigen input");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  HermitianEigen out;
  if (sym.imag().cwiseAbs().maxCoeff() == 0.0 || sym.size() == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym.real());
    if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "symmetric eigensolver");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<Complex>();
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "Hermitian eigensolver");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigenvalues input");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  if (sym.size() == 0) return RealVector{};
  if (sym.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym.real(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "symmetric eigensolver");
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "Hermitian eigensolver");
  return es.eigenvalues();
}

ComplexMatrix hermitian_function(const ComplexMatrix& a, const std::function<double(double)>& f) {
  HermitianEigen e = hermitian_eigen(a);
  RealVector fv(e.values.size());
  for (Index k = 0; k < fv.size(); ++k) fv(k) = f(e.values(k));
  return e.vectors * fv.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues input");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  ComplexVector w(n);
  if (n == 0) return w;
  ComplexMatrix work = a;  // zgeev overwrites its input
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(ErrorKind::EigenFailure, "zgeev returned info=" + std::to_string(info));
  }
  return w;
}

Contraction::Contraction(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  require_square(m_, "contraction");
  require_finite(m_, "contraction");
  norm_ = spectral_norm(m_);
  if (norm_ > 1.0 + tol.contraction) {
    throw Error(ErrorKind::NotContraction, "largest singular value " + fmt_double(norm_) + " > 1");
  }
}

Unitary::Unitary(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  require_square(m_, "unitary");
  require_finite(m_, "unitary");
  const double r = (m_.adjoint() * m_ - identity(m_.rows())).norm();
  if (r > tol.unitary) {
    throw Error(ErrorKind::NotUnitary, "||U*U - I||_F = " + fmt_double(r));
  }
}

Contraction Unitary::as_contraction() const {
  Tolerances loose;
  return Contraction(m_, loose);
}

Dissipative::Dissipative(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  require_square(m_, "dissipative");
  require_finite(m_, "dissipative");
  RealVector ev = hermitian_eigenvalues(imaginary_part(m_));
  min_im_ = ev.size() ? ev(0) : 0.0;
  if (min_im_ < -tol.dissipative) {
    throw Error(ErrorKind::NotDissipative, "smallest eigenvalue of Im L is " + fmt_double(min_im_));
  }
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_sqrt input");
  const double scale = std::max(1.0, a.norm());
  const double asym = hermitian_residual(a);
  if (asym > tol.hermitian * scale) {
    throw Error(ErrorKind::NotHermitian, "symmetry residual " + fmt_double(asym));
  }
  HermitianEigen e = hermitian_eigen(a);
  RealVector root(e.values.size());
  for (Index k = 0; k < root.size(); ++k) {
    const double lambda = e.values(k);
    if (lambda < -tol.sqrt_clamp) {
      throw Error(ErrorKind::IndefiniteInput, "eigenvalue " + fmt_double(lambda) + " < 0");
    }
    root(k) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix s = e.vectors * root.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  return 0.5 * (s + s.adjoint());
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidExponent, "Schatten exponent must be >= 1");
  RealVector s = singular_values(a);
  if (s.size() == 0) return 0.0;
  const double smax = s(0);
  if (smax == 0.0) return 0.0;
  if (std::isinf(p)) return smax;
  if (p == 1.0) return s.sum();
  double acc = 0.0;
  for (Index k = 0; k < s.size(); ++k) acc += std::pow(s(k) / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

std::vector<Eigenphase> eigenphases(const Unitary& u, const Tolerances& tol) {
  ComplexVector lambda = eigenvalues(u.matrix());
  std::vector<double> ph(static_cast<std::size_t>(lambda.size()));
  for (Index k = 0; k < lambda.size(); ++k) {
    double phi = std::arg(lambda(k));
    if (phi <= 0.0) phi += kTwoPi;
    if (phi < tol.phase_cluster || kTwoPi - phi < tol.phase_cluster) phi = kTwoPi;
    ph[static_cast<std::size_t>(k)] = phi;
  }
  std::sort(ph.begin(), ph.end());

  struct Cluster {
    double sum;
    int count;
    bool straddles;
  };
  std::vector<Cluster> clusters;
  for (std::size_t k = 0; k < ph.size(); ++k) {
    if (k > 0 && ph[k] - ph[k - 1] < tol.phase_cluster) {
      clusters.back().sum += ph[k];
      clusters.back().count += 1;
    } else {
      clusters.push_back({ph[k], 1, false});
    }
  }
  if (clusters.size() > 1 && ph.front() + kTwoPi - ph.back() < tol.phase_cluster) {
    clusters.back().count += clusters.front().count;
    clusters.back().straddles = true;
    clusters.erase(clusters.begin());
  }

  std::vector<Eigenphase> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    const double phase = c.straddles ? kTwoPi : c.sum / c.count;
    out.push_back({phase, c.count});
  }
  std::sort(out.begin(), out.end(), [](const Eigenphase& a, const Eigenphase& b) { return a.phase < b.phase; });
  return out;
}

std::vector<double> eigenphase_list(const Unitary& u, const Tolerances& tol) {
  std::vector<double> flat;
  for (const auto& e : eigenphases(u, tol))
    for (int k = 0; k < e.multiplicity; ++k) flat.push_back(e.phase);
  return flat;
}

DefectPair defect_operators(const Contraction& t, const Tolerances& tol) {
  // One SVD T = W S V* gives D_T = V (I - S^2)^{1/2} V* and
  // D_T* = W (I - S^2)^{1/2} W*, so T D_T = D_T* T holds to roundoff even when
  // I - S^2 is pure rounding noise (near-isometries).
  (void)tol;
  Eigen::JacobiSVD<ComplexMatrix> svd(t.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  RealVector root(s.size());
  for (Index k = 0; k < s.size(); ++k) {
    const double gap = (1.0 - s(k)) * (1.0 + s(k));
    root(k) = gap > 0.0 ? std::sqrt(gap) : 0.0;
  }
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  DefectPair d;
  d.d_t = v * root.cast<Complex>().asDiagonal() * v.adjoint();
  d.d_t_star = w * root.cast<Complex>().asDiagonal() * w.adjoint();
  d.d_t = 0.5 * (d.d_t + d.d_t.adjoint()).eval();
  d.d_t_star = 0.5 * (d.d_t_star + d.d_t_star.adjoint()).eval();
  return d;
}

PolarFactors polar_factors(const ComplexMatrix& a) {
  require_square(a, "polar_factors input");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  PolarFactors out;
  out.isometry = svd.matrixU() * svd.matrixV().adjoint();
  out.modulus = svd.matrixV() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
  out.modulus = 0.5 * (out.modulus + out.modulus.adjoint());
  if (s.size() > 0) out.rank_deficient = s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0));
  return out;
}

ComplexMatrix analytic_poly_eval(const ComplexMatrix& t, const Polynomial& coeffs) {
  require_square(t, "polynomial argument");
  if (coeffs.empty()) throw Error(ErrorKind::InvalidParameter, "empty coefficient list");
  const ComplexMatrix id = identity(t.rows());
  ComplexMatrix acc = coeffs.back() * id;
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * t + (*it) * id;
  return acc;
}

VonNeumannCheck von_neumann_check(const Contraction& t, const Polynomial& coeffs,
                                  std::size_t circle_samples) {
  VonNeumannCheck out{};
  out.operator_norm = spectral_norm(analytic_poly_eval(t.matrix(), coeffs));

  std::vector<double> zr(circle_samples), zi(circle_samples), fr(circle_samples), fi(circle_samples);
  for (std::size_t j = 0; j < circle_samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(circle_samples);
    zr[j] = std::cos(theta);
    zi[j] = std::sin(theta);
  }
  simd::active().horner(coeffs, zr, zi, fr, fi);
  double m = 0.0;
  for (std::size_t j = 0; j < circle_samples; ++j) m = std::max(m, std::hypot(fr[j], fi[j]));
  out.sup_norm = m;

  // A degree-d polynomial sampled at N > 2d points satisfies
  // max |f| <= sampled max / cos(pi d / N).
  const double d = static_cast<double>(degree(coeffs));
  const double inflate = 2.0 * d < static_cast<double>(circle_samples)
                             ? 1.0 / std::cos(kPi * d / static_cast<double>(circle_samples))
                             : std::numeric_limits<double>::infinity();
  out.holds = out.operator_norm <= m * inflate + 1e-8;
  return out;
}

CayleyResult cayley(const Dissipative& l, const Tolerances& tol) {
  const ComplexMatrix& m = l.matrix();
  const ComplexMatrix id = identity(l.dim());
  const ComplexMatrix plus = m + kI * id;
  const double cond = condition_number(plus);
  if (cond > tol.max_condition) {
    throw Error(ErrorKind::NearSingular, "cond(L + iI) = " + fmt_double(cond));
  }
  // (L - iI) and (L + iI)^{-1} commute.
  ComplexMatrix t = plus.partialPivLu().solve(m - kI * id);
  return CayleyResult{Contraction(std::move(t), tol), cond};
}

Dissipative inverse_cayley(const Contraction& t, const Tolerances& tol) {
  const ComplexMatrix& m = t.matrix();
  const ComplexMatrix id = identity(t.dim());
  const ComplexMatrix minus = id - m;
  RealVector s = singular_values(minus);
  if (s.size() && s(s.size() - 1) < tol.one_point) {
    throw Error(ErrorKind::OnePointSpectrum, "I - T is numerically singular");
  }
  ComplexMatrix l = kI * minus.partialPivLu().solve(id + m);
  Tolerances scaled = tol;
  scaled.dissipative = tol.dissipative * std::max(1.0, l.norm());
  return Dissipative(std::move(l), scaled);
}

double an_log_sum(const Contraction& t0, const Contraction& t1) {
  require_same_dim(t0.dim(), t1.dim(), "an_log_sum");
  RealVector s = singular_values(t1.matrix() - t0.matrix());
  double acc = 0.0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > 0.0) acc += s(k) * std::log1p(1.0 / s(k));
  return acc;
}

double singular_value_commute_check(const ComplexMatrix& t1, const ComplexMatrix& t2,
                                    const Tolerances& tol) {
  require_square(t1, "commute check t1");
  require_square(t2, "commute check t2");
  require_same_dim(t1.rows(), t2.rows(), "commute check");
  for (const ComplexMatrix* m : {&t1, &t2}) {
    const double asym = hermitian_residual(*m);
    if (asym > tol.hermitian * std::max(1.0, m->norm())) {
      throw Error(ErrorKind::NotHermitian, "symmetry residual " + fmt_double(asym));
    }
  }
  RealVector a = singular_values(t1 * t2);
  RealVector b = singular_values(t2 * t1);
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ssf
