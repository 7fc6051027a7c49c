#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ssf/circle.hpp"
#include "ssf/random.hpp"

using namespace ssf;
using testing::scalar;

namespace {

Complex direct_trace(const ComplexMatrix& a, const ComplexMatrix& b, const Polynomial& f) {
  return (oracle::naive_poly(b, f) - oracle::naive_poly(a, f)).trace();
}

}  // namespace

TEST_CASE("StepSSF validation") {
  CHECK_ERROR_KIND(StepSSF({{1.0, 1}}, 0.0), ErrorKind::InvalidParameter);
  CHECK_ERROR_KIND(StepSSF({{2.0, 1}, {1.0, -1}}, 0.0), ErrorKind::InvalidParameter);
  CHECK_ERROR_KIND(StepSSF({{1.0, 0}}, 0.0), ErrorKind::InvalidParameter);
  CHECK_NOTHROW(StepSSF({{1.0, 1}, {2.0, -1}}, 0.5));
}

TEST_CASE("unitary_ssf") {
  Rng rng(37);
  const Unitary u(random_unitary(rng, 3));
  const StepSSF same = unitary_ssf(u, u);
  CHECK(same.jumps().empty());
  CHECK(same.gauge() == 0.0);
  CHECK(same.value(1.0) == 0.0);

  const StepSSF s = unitary_ssf(Unitary(scalar(1.0)), Unitary(scalar(kI)));
  REQUIRE(s.jumps().size() == 2);
  CHECK(s.jumps()[0].theta == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(s.jumps()[0].size == -1);
  CHECK(s.jumps()[1].theta == kTwoPi);
  CHECK(s.jumps()[1].size == 1);
  CHECK(s.value(0.5) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(s.value(kPi / 2) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(s.value(3.0) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(std::fabs(s.mean()) <= 1e-15);

  Rng r2(37);
  const Unitary u0(random_unitary(r2, 4)), u1(random_unitary(r2, 4));
  const StepSSF ssf = unitary_ssf(u0, u1);
  int total = 0;
  for (const Jump& j : ssf.jumps()) total += j.size;
  CHECK(total == 0);
  for (std::size_t k = 1; k <= 3; ++k) {
    const Polynomial f = monomial(k);
    CHECK(std::abs(ssf_trace_integral(ssf, f) - direct_trace(u0.matrix(), u1.matrix(), f)) <= 1e-10);
  }
  CHECK_ERROR_KIND(unitary_ssf(u0, Unitary(scalar(1.0))), ErrorKind::DimensionMismatch);
}

TEST_CASE("coincident eigenphases cancel") {
  const Unitary u0(testing::diag({1.0, kI})), u1(testing::diag({kI, -1.0}));
  const StepSSF s = unitary_ssf(u0, u1);
  REQUIRE(s.jumps().size() == 2);
  CHECK(s.jumps()[0].theta == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(s.jumps()[0].size == -1);
  CHECK(s.jumps()[1].size == 1);
}

TEST_CASE("step values are integers plus the gauge") {
  Rng rng(38);
  const StepSSF s = unitary_ssf(Unitary(random_unitary(rng, 5)), Unitary(random_unitary(rng, 5)));
  for (double th = 0.01; th < kTwoPi; th += 0.05) {
    const double v = s.value(th) - s.gauge();
    CHECK(std::fabs(v - std::round(v)) <= 1e-12);
  }
}

TEST_CASE("ssf_trace_integral") {
  const StepSSF flat({}, 3.0);
  CHECK(std::abs(ssf_trace_integral(flat, {1.0, 2.0, 3.0})) == 0.0);

  const StepSSF s = unitary_ssf(Unitary(scalar(1.0)), Unitary(scalar(kI)));
  CHECK(std::abs(ssf_trace_integral(s, monomial(1)) - Complex{-1.0, 1.0}) <= 1e-15);

  Rng rng(37);
  const Unitary u0(random_unitary(rng, 4)), u1(random_unitary(rng, 4));
  const Polynomial f{0.0, -2.0, 0.0, 1.0};
  CHECK(std::abs(ssf_trace_integral(unitary_ssf(u0, u1), f) - direct_trace(u0.matrix(), u1.matrix(), f)) <= 1e-10);
}

TEST_CASE("gauge invariance of the trace integral") {
  Rng rng(39);
  const StepSSF s = unitary_ssf(Unitary(random_unitary(rng, 4)), Unitary(random_unitary(rng, 4)));
  const Polynomial f = random_polynomial(rng, 5);
  CHECK(ssf_trace_integral(s, f) == ssf_trace_integral(s.with_gauge(17.5), f));
}

TEST_CASE("unitary trace formula up to n = 16") {
  Rng rng(40);
  for (int n = 1; n <= 16; ++n) {
    const Unitary u0(random_unitary(rng, n)), u1(random_unitary(rng, n));
    const StepSSF s = unitary_ssf(u0, u1);
    Polynomial f = random_polynomial(rng, 1 + n % 8);
    const double l1 = coefficient_l1(f);
    for (auto& c : f) c *= 10.0 / l1;
    CHECK(std::abs(ssf_trace_integral(s, f) - direct_trace(u0.matrix(), u1.matrix(), f)) <= 1e-10);
  }
}

TEST_CASE("contraction_ssf") {
  Rng rng(41);
  const Contraction a(random_contraction(rng, 3));
  CHECK(contraction_ssf(a, a, 5).jumps().empty());

  const StepSSF h = contraction_ssf(Contraction(scalar(0.0)), Contraction(scalar(0.5)), 5);
  CHECK(std::abs(ssf_trace_integral(h, monomial(1)) - 0.5) <= 1e-12);

  Rng r2(41);
  const Contraction t0(random_contraction(r2, 3)), t1(random_contraction(r2, 3));
  const StepSSF s = contraction_ssf(t0, t1, 8);
  const StepSSF s10 = contraction_ssf(t0, t1, 10);
  for (std::size_t d = 1; d <= 6; ++d) {
    const Polynomial f = random_polynomial(r2, d);
    const Complex expect = oracle::trace_via_roots(t1.matrix(), f) - oracle::trace_via_roots(t0.matrix(), f);
    CHECK(std::abs(ssf_trace_integral(s, f) - expect) <= 1e-9);
    CHECK(std::abs(ssf_trace_integral(s, f) - ssf_trace_integral(s10, f)) <= 1e-9);
  }
}

TEST_CASE("perturbation_determinant") {
  Rng rng(43);
  const Contraction a(random_contraction(rng, 4));
  CHECK(std::abs(perturbation_determinant(a, a, Complex{0.0, 1.5}) - 1.0) <= 1e-14);
  CHECK(std::abs(perturbation_determinant(Contraction(scalar(0.0)), Contraction(scalar(0.5)), 2.0) - 0.75) <= 1e-15);

  Rng r2(43);
  const Contraction t0(random_contraction(r2, 4)), t1(random_contraction(r2, 4));
  const Complex zeta = 3.0;
  const ComplexMatrix id = identity(4);
  const Complex alt = (t1.matrix() - zeta * id).determinant() / (t0.matrix() - zeta * id).determinant();
  CHECK(std::abs(perturbation_determinant(t0, t1, zeta) - alt) <= 1e-10);

  CHECK_ERROR_KIND(perturbation_determinant(t0, t1, 1.0), ErrorKind::InvalidParameter);
}

TEST_CASE("determinant_ssf") {
  Rng rng(44);
  const Contraction a(random_contraction(rng, 2));
  DeterminantOptions small;
  small.grid = 256;
  for (double v : determinant_ssf(a, a, small).values) CHECK(std::fabs(v) <= 1e-12);

  const Unitary u0(scalar(1.0)), u1(scalar(kI));
  const SampledSSF sampled = determinant_ssf(u0.as_contraction(), u1.as_contraction());
  CHECK(sampled.winding == 0);
  CHECK(sampled.kappa == kDeterminantSign);
  CHECK(sampled.thetas.size() >= 8192);
  const StepSampleComparison cmp = compare_sampled_to_step(sampled, unitary_ssf(u0, u1), 2e-2);
  CHECK(cmp.compared > 7000);
  CHECK(cmp.max_deviation <= 5e-2);

  Rng r2(47);
  const Contraction t0(random_contraction(r2, 3)), t1(random_contraction(r2, 3));
  const SampledSSF s = determinant_ssf(t0, t1);
  for (std::size_t k = 1; k <= 2; ++k) {
    const Polynomial f = monomial(k);
    CHECK(std::abs(sampled_trace_integral(s, f) - direct_trace(t0.matrix(), t1.matrix(), f)) <= 1e-3);
  }
  double mean = 0.0;
  for (double v : s.values) mean += v;
  CHECK(std::fabs(mean / static_cast<double>(s.values.size())) <= 1e-12);

  DeterminantOptions bad;
  bad.radius = 1.0;
  CHECK_ERROR_KIND(determinant_ssf(t0, t1, bad), ErrorKind::InvalidParameter);
  bad = DeterminantOptions{};
  bad.grid = 100;
  CHECK_ERROR_KIND(determinant_ssf(t0, t1, bad), ErrorKind::InvalidParameter);
}

TEST_CASE("determinant route matches step route for unitary pairs") {
  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 4;
    const Unitary u0(random_unitary(rng, n)), u1(random_unitary(rng, n));
    const SampledSSF s = determinant_ssf(u0.as_contraction(), u1.as_contraction());
    const StepSampleComparison cmp = compare_sampled_to_step(s, unitary_ssf(u0, u1), 2e-2);
    CHECK(cmp.max_deviation <= 5e-2);
  }
}

TEST_CASE("hardy_gauge_check") {
  const StepSSF s = unitary_ssf(Unitary(scalar(1.0)), Unitary(scalar(kI)));
  CHECK(std::abs(hardy_gauge_check(s, 0, monomial(1)).perturbation) <= 1e-10);
  CHECK(std::abs(hardy_gauge_check(s, 2, monomial(3)).perturbation) <= 1e-10);
  Rng rng(53);
  const Polynomial f = random_polynomial(rng, 4);
  const HardyGaugeResult r = hardy_gauge_check(s, 5, f);
  CHECK(std::abs(r.perturbation) <= 1e-10);
  CHECK(std::abs(r.shifted - r.base) <= 1e-10);

  for (std::size_t k = 0; k <= 8; ++k) {
    for (std::size_t d = 1; d <= 8; ++d) CHECK(std::abs(hardy_gauge_check(s, k, random_polynomial(rng, d)).perturbation) <= 1e-10);
  }
}

TEST_CASE("real_ssf_conditions_report") {
  Rng rng(59);
  const Contraction a(random_contraction(rng, 3));
  const RealSsfConditions same = real_ssf_conditions_report(a, a, 1.0, 0.0, 1.0);
  REQUIRE(same.weighted_difference);
  CHECK(*same.weighted_difference == 0.0);
  CHECK(same.defect_difference == 0.0);
  CHECK(same.defect_star_difference == 0.0);

  const RealSsfConditions sc = real_ssf_conditions_report(Contraction(scalar(0.0)), Contraction(scalar(0.5)), 1.0, 0.0, 1.0);
  REQUIRE(sc.weighted_difference);
  CHECK(*sc.weighted_difference == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sc.defect_difference == doctest::Approx(1.0 - std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(sc.kernel_certified);

  Rng r2(59);
  const Contraction t0(random_contraction(r2, 4)), t1(random_contraction(r2, 4));
  CHECK(real_ssf_conditions_report(t0, t1, 0.5, 0.25, 2.0).identity_residual <= 1e-10);

  const RealSsfConditions iso = real_ssf_conditions_report(Contraction(scalar(1.0)), Contraction(scalar(0.5)), 1.0, 0.0, 1.0);
  CHECK(iso.kernel_violation);
  CHECK_FALSE(iso.weighted_difference.has_value());
  CHECK_FALSE(iso.note.empty());

  CHECK_ERROR_KIND(real_ssf_conditions_report(t0, t1, 0.25, 0.25, 1.0), ErrorKind::InvalidParameter);
}

TEST_CASE("hermitian_inverse_power") {
  CHECK(frobenius(hermitian_inverse_power(testing::diag({4.0, 0.25}), 0.5) - testing::diag({0.5, 2.0})) <= 1e-14);
  CHECK(frobenius(hermitian_inverse_power(testing::diag({0.0, 1.0}), 0.0) - identity(2)) == 0.0);
  CHECK_ERROR_KIND(hermitian_inverse_power(testing::diag({1e-13, 1.0}), 1.0), ErrorKind::KernelViolation);
}

TEST_CASE("circular_distance") {
  CHECK(circular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(circular_distance(1.0, 2.0) == doctest::Approx(1.0));
}
