#pragma once

// Julia blocks and cyclic Schaffer dilations of contractions.
//
// A FiniteDilation lives on m copies of the base space, indexed 0..m-1, with
// block m-1 standing in for block -1 of the bilateral construction. Column
// blocks 0 and 1 feed rows 0 and m-1 through the Julia block; column block
// j >= 2 maps identically onto row block j-1. The result is exactly unitary
// and reproduces T^k in block (0,0) for k <= m-1.

#include <utility>

#include "ssf/linalg.hpp"

namespace ssf {

struct FiniteDilation {
  Unitary u;
  int m;
  Index n;
  int embedding_index = 0;

  /// Block (0,0) of u.
  ComplexMatrix compression() const;
  /// Block (0,0) of u^k.
  ComplexMatrix compressed_power(int k) const;
};

/// [[D_T, -T*], [T, D_T*]]: rows ordered (block -1, block 0), columns
/// (block 0, block 1).
Unitary julia_block(const Contraction& t, const Tolerances& tol = {});

FiniteDilation finite_schaffer_dilation(const Contraction& t, int m, const Tolerances& tol = {});

std::pair<FiniteDilation, FiniteDilation> dilation_pair(const Contraction& t0, const Contraction& t1,
                                                        int m, const Tolerances& tol = {});

/// max_{1<=k<=kmax} ||P0 U^k|_0 - T^k||_F
double power_dilation_residual(const FiniteDilation& d, const Contraction& t, int kmax);

/// Largest |entry| of U1 - U0 outside the Julia rows/columns (blocks m-1, 0
/// by blocks 0, 1).
double julia_support_leak(const FiniteDilation& d0, const FiniteDilation& d1);

/// Extracts the 2n x 2n Julia positions of U1 - U0 (rows m-1, 0; cols 0, 1).
ComplexMatrix julia_difference(const FiniteDilation& d0, const FiniteDilation& d1);

/// Dilation order used when only a polynomial degree is requested.
inline int default_dilation_order(std::size_t degree) { return static_cast<int>(degree) + 3; }

}  // namespace ssf
