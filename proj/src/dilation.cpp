#include "ssf/dilation.hpp"

#include "ssf/error.hpp"

namespace ssf {

namespace {

Tolerances unitary_check(const Tolerances& tol, Index dim) {
  // Unitarity of the assembled blocks degrades with the size of the square
  // roots; scale the Frobenius threshold with sqrt(dim).
  Tolerances t = tol;
  t.unitary = tol.unitary * std::max(1.0, std::sqrt(static_cast<double>(dim)));
  return t;
}

}  // namespace

ComplexMatrix FiniteDilation::compression() const { return u.matrix().topLeftCorner(n, n); }

ComplexMatrix FiniteDilation::compressed_power(int k) const {
  // Only block column 0 is propagated.
  ComplexMatrix col = u.matrix().leftCols(n);
  for (int step = 1; step < k; ++step) col = u.matrix() * col;
  return col.topRows(n);
}

Unitary julia_block(const Contraction& t, const Tolerances& tol) {
  const Index n = t.dim();
  const DefectPair d = defect_operators(t, tol);
  ComplexMatrix j(2 * n, 2 * n);
  j.topLeftCorner(n, n) = d.d_t;
  j.topRightCorner(n, n) = -t.matrix().adjoint();
  j.bottomLeftCorner(n, n) = t.matrix();
  j.bottomRightCorner(n, n) = d.d_t_star;
  return Unitary(std::move(j), unitary_check(tol, n));
}

FiniteDilation finite_schaffer_dilation(const Contraction& t, int m, const Tolerances& tol) {
  if (m < 3) throw Error(ErrorKind::InvalidOrder, "dilation needs m >= 3 blocks, got " + std::to_string(m));
  const Index n = t.dim();
  const DefectPair d = defect_operators(t, tol);
  const Index last = static_cast<Index>(m - 1) * n;
  ComplexMatrix u = ComplexMatrix::Zero(m * n, m * n);
  u.block(0, 0, n, n) = t.matrix();
  u.block(0, n, n, n) = d.d_t_star;
  u.block(last, 0, n, n) = d.d_t;
  u.block(last, n, n, n) = -t.matrix().adjoint();
  for (int j = 1; j <= m - 2; ++j) u.block(j * n, (j + 1) * n, n, n) = identity(n);
  return FiniteDilation{Unitary(std::move(u), unitary_check(tol, m * n)), m, n, 0};
}

std::pair<FiniteDilation, FiniteDilation> dilation_pair(const Contraction& t0, const Contraction& t1,
                                                        int m, const Tolerances& tol) {
  require_same_dim(t0.dim(), t1.dim(), "dilation_pair");
  return {finite_schaffer_dilation(t0, m, tol), finite_schaffer_dilation(t1, m, tol)};
}

double power_dilation_residual(const FiniteDilation& d, const Contraction& t, int kmax) {
  double worst = 0.0;
  ComplexMatrix col = d.u.matrix().leftCols(d.n);
  ComplexMatrix tk = t.matrix();
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      col = d.u.matrix() * col;
      tk = tk * t.matrix();
    }
    worst = std::max(worst, (col.topRows(d.n) - tk).norm());
  }
  return worst;
}

ComplexMatrix julia_difference(const FiniteDilation& d0, const FiniteDilation& d1) {
  const Index n = d0.n;
  const Index last = static_cast<Index>(d0.m - 1) * n;
  const ComplexMatrix diff = d1.u.matrix() - d0.u.matrix();
  ComplexMatrix j(2 * n, 2 * n);
  j.topRows(n) = diff.block(last, 0, n, 2 * n);
  j.bottomRows(n) = diff.block(0, 0, n, 2 * n);
  return j;
}

double julia_support_leak(const FiniteDilation& d0, const FiniteDilation& d1) {
  require_same_dim(d0.u.dim(), d1.u.dim(), "julia_support_leak");
  const Index n = d0.n;
  const Index last = static_cast<Index>(d0.m - 1) * n;
  ComplexMatrix diff = d1.u.matrix() - d0.u.matrix();
  diff.block(0, 0, n, 2 * n).setZero();
  diff.block(last, 0, n, 2 * n).setZero();
  return diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace ssf
