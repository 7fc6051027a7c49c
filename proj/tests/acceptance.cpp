// Exit criteria, one PASS/FAIL line each. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ssf/circle.hpp"
#include "ssf/dilation.hpp"
#include "ssf/fractional.hpp"
#include "ssf/line.hpp"
#include "ssf/random.hpp"
#include "ssf/schrodinger.hpp"

using namespace ssf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;  // 0 = no runtime bound
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Complex oracle_trace(const ComplexMatrix& a, const ComplexMatrix& b, const Polynomial& f) {
  return (oracle::naive_poly(b, f) - oracle::naive_poly(a, f)).trace();
}

Outcome unitary_trace_formula() {
  Rng rng(1001);
  double worst = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    const int n = 1 + pair % 8;
    const Unitary u0(random_unitary(rng, n)), u1(random_unitary(rng, n));
    const StepSSF s = unitary_ssf(u0, u1);
    for (std::size_t k = 0; k <= 8; ++k) {
      const Polynomial f = monomial(k);
      worst = std::max(worst, std::abs(oracle_trace(u0.matrix(), u1.matrix(), f) - ssf_trace_integral(s, f)));
    }
  }
  return {worst <= 1e-10, fmt("max residual %.3e (tol 1e-10)", worst)};
}

struct ContractionCase {
  Contraction t0, t1;
  Polynomial f;
  int m;
};

std::vector<ContractionCase> contraction_corpus() {
  Rng rng(2002);
  std::vector<ContractionCase> out;
  for (int pair = 0; pair < 100; ++pair) {
    const int n = 1 + pair % 6;
    const std::size_t d = 1 + static_cast<std::size_t>(pair % 6);
    Contraction t0(random_contraction(rng, n)), t1(random_contraction(rng, n));
    out.push_back({std::move(t0), std::move(t1), random_polynomial(rng, d), static_cast<int>(d) + 3});
  }
  return out;
}

Outcome contraction_trace_formula() {
  double worst = 0.0;
  for (const auto& c : contraction_corpus()) {
    const StepSSF s = contraction_ssf(c.t0, c.t1, c.m);
    worst = std::max(worst, std::abs(oracle_trace(c.t0.matrix(), c.t1.matrix(), c.f) - ssf_trace_integral(s, c.f)));
  }
  return {worst <= 1e-9, fmt("max residual %.3e (tol 1e-9)", worst)};
}

Outcome power_dilation() {
  double worst = 0.0;
  for (const auto& c : contraction_corpus()) {
    for (const Contraction* t : {&c.t0, &c.t1}) {
      const FiniteDilation d = finite_schaffer_dilation(*t, c.m);
      for (int k = 1; k <= c.m - 2; ++k) {
        const ComplexMatrix block = oracle::naive_power(d.u.matrix(), k).topLeftCorner(t->dim(), t->dim());
        worst = std::max(worst, frobenius(block - oracle::naive_power(t->matrix(), k)));
      }
    }
  }
  return {worst <= 1e-10, fmt("max residual %.3e (tol 1e-10)", worst)};
}

Outcome fractional_bound() {
  double slack = 1e300;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int n = 1 + static_cast<int>(seed % 8);
    const ComplexMatrix x = random_hermitian_spectrum(rng, n, 1e-3, 1.0);
    const ComplexMatrix y = random_hermitian_spectrum(rng, n, 1e-3, 1.0);
    const double sigma = rng.uniform(0.05, 0.95);
    const double total = 1.0 - rng.uniform() * sigma * 0.999;
    const double alpha = total * rng.uniform();
    const double p = 1.0 + static_cast<double>(seed % 2);
    const FyoklaReport r = fyokla_bound_report(FractionalJob(x, y, sigma, alpha, total - alpha, p));
    slack = std::min(slack, r.bound - r.lhs);
  }
  const FyoklaReport w =
      fyokla_bound_report(FractionalJob(ComplexMatrix::Constant(1, 1, 0.25), ComplexMatrix::Constant(1, 1, 0.75), 0.5, 1.0, 0.0, 1.0));
  const bool witness = std::fabs(w.lhs - 0.36603) <= 5e-6 && std::fabs(w.bound - 1.59155) <= 5e-6;
  return {slack >= -1e-10 && witness,
          fmt("min slack %.3e (tol -1e-10); witness LHS %.5f", slack, w.lhs) + fmt(", bound %.5f", w.bound)};
}

Outcome fractional_quadrature() {
  Rng rng(5005);
  double worst = 0.0, identity = 0.0;
  for (int job = 0; job < 50; ++job) {
    const int n = 1 + job % 8;
    const ComplexMatrix x = random_hermitian_spectrum(rng, n, 1e-3, 1.0);
    const ComplexMatrix y = random_hermitian_spectrum(rng, n, 1e-3, 1.0);
    const double sigma = rng.uniform(0.05, 0.95);
    const FractionalJob fj(x, y, sigma, 1.0, 0.0, 1.0);
    const ComplexMatrix exact = fractional_power(y, sigma) - fractional_power(x, sigma);
    worst = std::max(worst, frobenius(fractional_diff_fixed(fj, 200) - exact) / (1.0 + frobenius(exact)));
    for (double t : {0.01, 1.0, 100.0}) identity = std::max(identity, resolvent_difference_identity_check(x, y, t));
  }
  return {worst <= 1e-6 && identity <= 1e-11,
          fmt("max relative error %.3e (tol 1e-6); identity residual %.3e (tol 1e-11)", worst, identity)};
}

Outcome cayley_identities() {
  Rng rng(6006);
  double worst = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    const int n = 1 + pair % 8;
    worst = std::max(worst, cayley_identity_residuals(Dissipative(random_dissipative(rng, n)),
                                                      Dissipative(random_dissipative(rng, n)))
                                .max());
  }
  return {worst <= 1e-9, fmt("max residual %.3e (tol 1e-9)", worst)};
}

Outcome resolvent_trace_formula() {
  Rng rng(7007);
  double worst = 0.0, weakest_gain = 1e300;
  const Complex z{0.0, -2.0};
  for (int pair = 0; pair < 20; ++pair) {
    const Dissipative l0(random_dissipative(rng, 4)), l1(random_dissipative(rng, 4));
    const double r24 = resolvent_trace_residual(l0, l1, dissipative_ssf(l0, l1, 24), z).residual;
    const double r12 = resolvent_trace_residual(l0, l1, dissipative_ssf(l0, l1, 12), z).residual;
    worst = std::max(worst, r24);
    weakest_gain = std::min(weakest_gain, r12 / std::max(r24, 1e-300));
  }
  return {worst <= 1e-6 && weakest_gain >= 1e3,
          fmt("max residual at m=24 %.3e (tol 1e-6); min reduction 12->24 %.3e (need 1e3)", worst, weakest_gain)};
}

Outcome trace_obstruction() {
  Rng rng(8008);
  bool ok = true;
  double weighted = 0.0;
  for (int pair = 0; pair < 10; ++pair) {
    const int n = 1 + pair % 5;
    const Dissipative l0(random_dissipative(rng, n));
    ComplexMatrix bump = l0.matrix();
    bump(0, 0) += kI;
    const Dissipative l1(bump);
    const LineSSF s = dissipative_ssf(l0, l1, 20);
    const TraceVReport tv = trace_v_report(l0, l1, s, {1.0, 10.0});
    ok = ok && std::abs(tv.trace_v - kI) <= 1e-12 && !tv.real_integrable_possible;

    const Dissipative h1(l0.matrix() + random_hermitian(rng, n));
    const LineSSF sh = dissipative_ssf(l0, h1, 20);
    ok = ok && trace_v_report(l0, h1, sh, {1.0}).real_integrable_possible;
    for (const LineSSF* ls : {&s, &sh})
      weighted = std::max(weighted, std::fabs(weighted_integral_line(*ls) - weighted_integral_circle(ls->source)));
  }
  return {ok && weighted <= 1e-12, std::string(ok ? "flags correct" : "flag mismatch") +
                                       fmt("; weighted-integral mismatch %.3e (tol 1e-12)", weighted)};
}

Outcome kuzya_trace() {
  PotentialDescriptor q;
  const KuzyaReport r = kuzya_trace_report(q, gauss_legendre_grid(-8.0, 8.0, 1024));
  const double target = std::sqrt(kPi) / 2;
  const bool ok = std::fabs(r.trace - target) <= 1e-4 && std::fabs(r.trace - r.s1_norm) <= 1e-10 &&
                  r.min_eigenvalue >= -1e-10;
  return {ok, fmt("trace %.7f (target %.7f)", r.trace, target) +
                  fmt("; |trace - S1| %.3e; min eigenvalue %.3e", std::fabs(r.trace - r.s1_norm), r.min_eigenvalue)};
}

Outcome monotone_s1() {
  PotentialDescriptor q;
  std::vector<int> ns;
  for (int n = 2; n <= 128; ++n) ns.push_back(n);
  const MonotoneReport r = monotone_s1_check(q, gauss_legendre_grid(-8.0, 8.0, 512), ns);
  double worst = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) worst = std::max(worst, std::fabs(r.gap_norm[k] - r.full_norm / ns[k]));
  return {worst <= 1e-10 && r.approx_nondecreasing,
          fmt("max |gap - norm/n| %.3e (tol 1e-10); nondecreasing %.0f", worst, r.approx_nondecreasing ? 1.0 : 0.0)};
}

Outcome determinant_unitary() {
  Rng rng(11011);
  double worst = 0.0;
  for (int pair = 0; pair < 8; ++pair) {
    const int n = 1 + pair % 4;
    const Unitary u0(random_unitary(rng, n)), u1(random_unitary(rng, n));
    const SampledSSF s = determinant_ssf(u0.as_contraction(), u1.as_contraction());
    worst = std::max(worst, compare_sampled_to_step(s, unitary_ssf(u0, u1), 2e-2).max_deviation);
  }
  return {worst <= 5e-2, fmt("max deviation %.3e (tol 5e-2)", worst)};
}

Outcome determinant_contraction() {
  Rng rng(11012);
  double worst = 0.0, moments = 0.0;
  for (int pair = 0; pair < 8; ++pair) {
    const int n = 1 + pair % 4;
    const Contraction t0(random_contraction(rng, n)), t1(random_contraction(rng, n));
    const SampledSSF s = determinant_ssf(t0, t1);
    const StepSSF step = contraction_ssf(t0, t1, default_dilation_order(2));
    worst = std::max(worst, compare_sampled_to_step(s, step, 2e-2).max_deviation);
    for (std::size_t k = 1; k <= 2; ++k)
      moments = std::max(moments, std::abs(sampled_trace_integral(s, monomial(k)) - ssf_trace_integral(step, monomial(k))));
  }
  return {worst <= 5e-2, fmt("max deviation %.3e (tol 5e-2); trace integrals agree to %.3e", worst, moments)};
}

Outcome hardy_gauge() {
  Rng rng(12012);
  const StepSSF s = unitary_ssf(Unitary(random_unitary(rng, 3)), Unitary(random_unitary(rng, 3)));
  double worst = 0.0;
  for (std::size_t k = 0; k <= 8; ++k)
    for (std::size_t d = 0; d <= 8; ++d)
      worst = std::max(worst, std::abs(hardy_gauge_check(s, k, random_polynomial(rng, d)).perturbation));
  return {worst <= 1e-10, fmt("max |integral| %.3e (tol 1e-10)", worst)};
}

Outcome singular_value_commutation() {
  Rng rng(13013);
  double worst = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    const int n = 1 + pair % 16;
    worst = std::max(worst, singular_value_commute_check(random_hermitian(rng, n), random_hermitian(rng, n)));
  }
  return {worst <= 1e-10, fmt("max deviation %.3e (tol 1e-10)", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "unitary trace formula", 5.0, unitary_trace_formula},
      {"2", "contraction trace formula via dilation", 20.0, contraction_trace_formula},
      {"3", "power dilation", 0.0, power_dilation},
      {"4", "fractional Schatten bound", 10.0, fractional_bound},
      {"5", "fractional quadrature and resolvent identity", 0.0, fractional_quadrature},
      {"6", "Cayley identities", 0.0, cayley_identities},
      {"7", "resolvent trace formula", 10.0, resolvent_trace_formula},
      {"8", "trace obstruction flag and weighted integral", 0.0, trace_obstruction},
      {"9", "Nystrom trace class at desk scale", 0.0, kuzya_trace},
      {"10", "monotone S1 approximation", 0.0, monotone_s1},
      {"11a", "determinant/step consistency, unitary pairs", 0.0, determinant_unitary},
      {"11b", "determinant/step consistency, strict contractions", 0.0, determinant_contraction},
      {"12", "Hardy gauge invariance", 0.0, hardy_gauge},
      {"13", "singular-value commutation", 0.0, singular_value_commutation},
  };

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_seconds <= 0.0 || secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %-3s %-50s %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), secs, c.budget_seconds > 0.0 ? fmt(" of %.0f", c.budget_seconds).c_str() : "");
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria failed; total %.2f s\n", failures, criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
