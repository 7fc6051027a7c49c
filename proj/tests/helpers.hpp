#pragma once

#include <doctest.h>

#include <initializer_list>

#include "ssf/error.hpp"
#include "ssf/linalg.hpp"
#include "ssf/random.hpp"

namespace testing {

using ssf::Complex;
using ssf::ComplexMatrix;

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<ssf::Index>(d.size()), static_cast<ssf::Index>(d.size()));
  ssf::Index k = 0;
  for (const Complex& v : d) m(k, k) = v, ++k;
  return m;
}

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<ssf::Index>(rows.size());
  const auto c = static_cast<ssf::Index>(rows.begin()->size());
  ComplexMatrix m(n, c);
  ssf::Index i = 0;
  for (const auto& r : rows) {
    ssf::Index j = 0;
    for (const Complex& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix scalar(Complex v) { return ComplexMatrix::Constant(1, 1, v); }

template <class F>
ssf::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const ssf::Error& e) {
    return e.kind();
  }
  FAIL("expected ssf::Error");
  return ssf::ErrorKind::IoError;
}

}  // namespace testing

#define CHECK_ERROR_KIND(expr, kind) CHECK(testing::error_kind([&] { (void)(expr); }) == (kind))
