#include "ssf/app/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include "ssf/app/csv.hpp"
#include "ssf/app/svg.hpp"
#include "ssf/circle.hpp"
#include "ssf/dilation.hpp"
#include "ssf/error.hpp"
#include "ssf/fractional.hpp"
#include "ssf/line.hpp"
#include "ssf/schrodinger.hpp"

namespace ssf::app {

namespace {

double poly_scale(const Polynomial& f) { return std::max(1.0, coefficient_l1(f) / 10.0); }

json poly_json(const Polynomial& f) {
  json j = json::array();
  for (const auto& c : f) j.push_back(complex_to_json(c));
  return j;
}

std::string indexed(const std::string& base, std::size_t k) { return base + "[" + std::to_string(k) + "]"; }

void hardy_records(Report& rep, const StepSSF& ssf, const std::vector<Polynomial>& polys, double scale) {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    double worst = 0.0;
    for (std::size_t k = 0; k <= 8; ++k) worst = std::max(worst, std::abs(hardy_gauge_check(ssf, k, polys[i]).perturbation));
    rep.add(indexed("hardy_gauge", i), "hardy-gauge", worst, 0.0, worst, 1e-10 * scale);
  }
}

void determinant_records(Report& rep, const Scenario& sc, const Contraction& t0, const Contraction& t1,
                         const StepSSF& step, bool unitary, double scale) {
  const SampledSSF sampled = determinant_ssf(t0, t1, *sc.determinant, sc.tolerances);
  rep.diagnostics["determinant"] = {{"radius", sampled.radius},
                                    {"grid", sampled.thetas.size()},
                                    {"kappa", sampled.kappa},
                                    {"gauge", sampled.gauge},
                                    {"winding", sampled.winding},
                                    {"refinements", sampled.refinements}};
  for (std::size_t i = 0; i < sc.polynomials.size(); ++i) {
    const Polynomial& f = sc.polynomials[i];
    const Complex lhs = trace_difference(t0.matrix(), t1.matrix(), f);
    const Complex rhs = sampled_trace_integral(sampled, f);
    rep.add(indexed("determinant_trace", i), "determinant-trace", complex_to_json(lhs), complex_to_json(rhs),
            std::abs(lhs - rhs), 1e-3 * poly_scale(f) * scale);
  }
  const StepSampleComparison cmp = compare_sampled_to_step(sampled, step, 2e-2);
  if (unitary) {
    rep.add("determinant_step_consistency", "determinant-step-consistency", cmp.max_deviation, 0.0, cmp.max_deviation,
            5e-2 * scale);
  } else {
    // For strict contractions the determinant route is smooth while the
    // dilation route is a step function; the deviation is reported only.
    rep.diagnostics["determinant_step_deviation"] = cmp.max_deviation;
  }
  rep.diagnostics["determinant_points_compared"] = cmp.compared;
  rep.tables.push_back(sampled_table(sampled));
}

void run_unitary(Report& rep, const Scenario& sc, double scale) {
  const Unitary u0(sc.matrix("u0"), sc.tolerances);
  const Unitary u1(sc.matrix("u1"), sc.tolerances);
  const StepSSF ssf = unitary_ssf(u0, u1, sc.tolerances);
  int balance = 0;
  for (const Jump& j : ssf.jumps()) balance += j.size;
  rep.add("jump_balance", "ssf-jump-balance", balance, 0, std::abs(balance), 0.0);
  for (std::size_t i = 0; i < sc.polynomials.size(); ++i) {
    const Polynomial& f = sc.polynomials[i];
    const Complex lhs = trace_difference(u0.matrix(), u1.matrix(), f);
    const Complex rhs = ssf_trace_integral(ssf, f);
    rep.add(indexed("trace_formula", i), "unitary-trace-formula", complex_to_json(lhs), complex_to_json(rhs),
            std::abs(lhs - rhs), 1e-10 * poly_scale(f) * scale);
  }
  hardy_records(rep, ssf, sc.polynomials, scale);
  rep.diagnostics["jumps"] = ssf.jumps().size();
  rep.diagnostics["gauge"] = ssf.gauge();
  rep.tables.insert(rep.tables.begin(), step_table(ssf));
  if (sc.determinant) determinant_records(rep, sc, u0.as_contraction(), u1.as_contraction(), ssf, true, scale);
}

void run_contraction(Report& rep, const Scenario& sc, double scale) {
  const Contraction t0(sc.matrix("t0"), sc.tolerances);
  const Contraction t1(sc.matrix("t1"), sc.tolerances);
  std::size_t max_deg = 1;
  for (const auto& f : sc.polynomials) max_deg = std::max(max_deg, degree(f));
  const int m = sc.dilation_order.value_or(default_dilation_order(max_deg));
  rep.diagnostics["dilation_order"] = m;

  const auto [d0, d1] = dilation_pair(t0, t1, m, sc.tolerances);
  const ComplexMatrix id = identity(d0.u.dim());
  const double unit0 = frobenius(d0.u.matrix().adjoint() * d0.u.matrix() - id);
  const double unit1 = frobenius(d1.u.matrix().adjoint() * d1.u.matrix() - id);
  rep.add("dilation_unitarity", "dilation-unitarity", std::max(unit0, unit1), 0.0, std::max(unit0, unit1), 1e-10 * scale);
  const double power = std::max(power_dilation_residual(d0, t0, m - 2), power_dilation_residual(d1, t1, m - 2));
  rep.add("dilation_power", "dilation-power", power, 0.0, power, 1e-10 * scale);
  const double leak = julia_support_leak(d0, d1);
  rep.add("julia_support", "dilation-julia-support", leak, 0.0, leak, 1e-14 * scale);

  const StepSSF ssf = unitary_ssf(d0.u, d1.u, sc.tolerances);
  int uncertified = 0;
  for (std::size_t i = 0; i < sc.polynomials.size(); ++i) {
    const Polynomial& f = sc.polynomials[i];
    if (static_cast<int>(degree(f)) > m - 2) {
      ++uncertified;
      continue;
    }
    const Complex lhs = trace_difference(t0.matrix(), t1.matrix(), f);
    const Complex rhs = ssf_trace_integral(ssf, f);
    rep.add(indexed("trace_formula", i), "contraction-trace-formula", complex_to_json(lhs), complex_to_json(rhs),
            std::abs(lhs - rhs), 1e-9 * poly_scale(f) * scale);
  }
  rep.diagnostics["uncertified_polynomials"] = uncertified;
  hardy_records(rep, ssf, sc.polynomials, scale);

  const RealSsfConditions cond = real_ssf_conditions_report(t0, t1, sc.cond_alpha, sc.cond_beta, sc.cond_p, sc.tolerances);
  rep.add("defect_square_identity", "defect-square-identity", cond.identity_residual, 0.0, cond.identity_residual,
          1e-10 * scale);
  rep.flags["kernel_certified"] = cond.kernel_certified;
  rep.flags["kernel_violation"] = cond.kernel_violation;
  json c = {{"alpha", sc.cond_alpha},
            {"beta", sc.cond_beta},
            {"p", sc.cond_p},
            {"min_eig_d_t0", cond.min_eig_d_t0},
            {"defect_difference", cond.defect_difference},
            {"defect_star_difference", cond.defect_star_difference}};
  c["weighted_difference"] = cond.weighted_difference ? json(*cond.weighted_difference) : json("unavailable");
  c["weighted_adjoint_difference"] =
      cond.weighted_adjoint_difference ? json(*cond.weighted_adjoint_difference) : json("unavailable");
  if (!cond.note.empty()) c["note"] = cond.note;
  rep.diagnostics["conditions"] = std::move(c);
  rep.diagnostics["an_log_sum"] = an_log_sum(t0, t1);
  rep.diagnostics["jumps"] = ssf.jumps().size();
  rep.tables.insert(rep.tables.begin(), step_table(ssf));
  if (sc.determinant) determinant_records(rep, sc, t0, t1, ssf, false, scale);
}

void line_records(Report& rep, const Scenario& sc, const Dissipative& l0, const Dissipative& l1, int m,
                  double resolvent_tol, double scale) {
  const CayleyIdentityResiduals cir = cayley_identity_residuals(l0, l1, sc.tolerances);
  rep.add("cayley_difference", "cayley-difference", cir.difference, 0.0, cir.difference, 1e-9 * scale);
  const double def = std::max(cir.defect[0], cir.defect[1]);
  const double defs = std::max(cir.defect_star[0], cir.defect_star[1]);
  rep.add("cayley_defect", "cayley-defect", def, 0.0, def, 1e-9 * scale);
  rep.add("cayley_defect_adjoint", "cayley-defect-adjoint", defs, 0.0, defs, 1e-9 * scale);

  const LineSSF ssf = dissipative_ssf(l0, l1, m, sc.tolerances);
  const double wl = weighted_integral_line(ssf);
  const double wc = weighted_integral_circle(ssf.source);
  rep.add("weighted_integrability", "weighted-integrability", wl, wc, std::fabs(wl - wc), 1e-12 * scale);

  for (std::size_t k = 0; k < sc.z_values.size(); ++k) {
    const Complex z = sc.z_values[k];
    const ResolventResidual r = resolvent_trace_residual(l0, l1, ssf, z);
    rep.add(indexed("resolvent_trace", k), "resolvent-trace-formula", complex_to_json(r.lhs), complex_to_json(r.rhs),
            r.residual, resolvent_tol * scale);
  }

  const TraceVReport tv = trace_v_report(l0, l1, ssf, sc.window_radii);
  rep.flags["real_integrable_possible"] = tv.real_integrable_possible;
  rep.diagnostics["trace_v"] = complex_to_json(tv.trace_v);
  rep.diagnostics["tails"] = {{"minus_infinity", tv.left_tail}, {"plus_infinity", tv.right_tail}};
  json windows = json::array();
  for (std::size_t k = 0; k < tv.radii.size(); ++k) windows.push_back({{"R", tv.radii[k]}, {"integral", tv.windowed[k]}});
  rep.diagnostics["windowed_integrals"] = std::move(windows);
  rep.diagnostics["dilation_order"] = m;

  try {
    const Iml0Report im = iml0_condition_report(l0, l1, 1.0);
    rep.flags["im_kernel_trivial"] = true;
    rep.diagnostics["im_condition"] = {{"weighted_difference", im.weighted_difference},
                                       {"resolvent_difference_s1", im.resolvent_difference},
                                       {"bounded_plus", {im.bounded_plus[0], im.bounded_plus[1]}},
                                       {"bounded_adjoint", {im.bounded_adjoint[0], im.bounded_adjoint[1]}},
                                       {"min_imaginary", {im.min_imaginary[0], im.min_imaginary[1]}}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::KernelViolation) throw;
    rep.flags["im_kernel_trivial"] = false;
  }
  rep.tables.insert(rep.tables.begin(), line_table(ssf));
}

void run_dissipative(Report& rep, const Scenario& sc, double scale) {
  const Dissipative l0(sc.matrix("l0"), sc.tolerances);
  const Dissipative l1(sc.matrix("l1"), sc.tolerances);
  line_records(rep, sc, l0, l1, sc.dilation_order.value_or(20), 1e-6, scale);
}

void run_schrodinger(Report& rep, const Scenario& sc, double scale) {
  const std::size_t n = sc.grid.nodes;
  const double h = (sc.grid.hi - sc.grid.lo) / static_cast<double>(n + 1);
  std::vector<Complex> q(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = sc.coupling * sc.potential(sc.grid.lo + h * static_cast<double>(j + 1));
  const auto [l0, l1] = discrete_schrodinger_pair(q, h, sc.tolerances);
  const double min_im = l0.min_imaginary_eigenvalue();
  rep.add("discrete_dissipativity", "discrete-dissipativity", min_im, 1.0, std::max(0.0, 1.0 - min_im), 1e-10 * scale);
  rep.diagnostics["spacing"] = h;
  line_records(rep, sc, l0, l1, sc.dilation_order.value_or(24), 1e-5, scale);
}

void run_fractional(Report& rep, const Scenario& sc, double scale) {
  const FractionalJob job(sc.matrix("x"), sc.matrix("y"), sc.sigma, sc.alpha, sc.beta, sc.p, sc.tolerances);
  rep.flags["ill_conditioned"] = job.ill_conditioned();

  const FyoklaReport fb = fyokla_bound_report(job, sc.beta == 0.0);
  rep.add("fractional_bound", "fractional-bound", fb.lhs, fb.bound, std::max(0.0, fb.lhs - fb.bound), 1e-10 * scale);
  rep.diagnostics["bound"] = {{"lhs", fb.lhs}, {"bound", fb.bound}, {"weighted", fb.weighted},
                              {"difference", fb.difference}, {"c_sigma", fb.c}};
  if (fb.corollary_bound) rep.diagnostics["bound"]["corollary_bound"] = *fb.corollary_bound;

  const ComplexMatrix exact = fractional_power(job.y(), job.sigma()) - fractional_power(job.x(), job.sigma());
  const ComplexMatrix quad = fractional_diff_fixed(job, sc.quadrature_nodes);
  const double rel = frobenius(quad - exact) / (1.0 + frobenius(exact));
  rep.add("fractional_quadrature", "fractional-quadrature", frobenius(quad), frobenius(exact), rel,
          (job.ill_conditioned() ? 1e-4 : 1e-6) * scale);
  const ComplexMatrix half = fractional_diff_fixed(job, std::max(32, sc.quadrature_nodes / 2));
  rep.diagnostics["quadrature_halving_change"] = frobenius(quad - half);

  const double ts[] = {0.01, 1.0, 100.0};
  for (std::size_t k = 0; k < 3; ++k) {
    const double r = resolvent_difference_identity_check(job.x(), job.y(), ts[k]);
    rep.add(indexed("resolvent_difference", k), "resolvent-difference", ts[k], 0.0, r, 1e-11 * scale);
  }
}

void run_kuzya(Report& rep, const Scenario& sc, double scale) {
  const Grid1D grid = sc.grid.build();
  const KuzyaReport kr = kuzya_trace_report(sc.potential, grid, sc.kernel_z);
  if (sc.kernel_z == Complex{-1.0, 0.0}) {
    rep.add("kuzya_trace", "kuzya-trace", kr.trace, kr.closed_form, std::fabs(kr.trace - kr.closed_form), 1e-4 * scale);
  } else {
    rep.add("kuzya_trace", "kuzya-trace", kr.trace, kr.diagonal_integral, std::fabs(kr.trace - kr.diagonal_integral),
            1e-10 * scale);
  }
  rep.add("kuzya_trace_norm", "kuzya-trace-norm", kr.trace, kr.s1_norm, std::fabs(kr.trace - kr.s1_norm), 1e-10 * scale);
  rep.add("kuzya_positivity", "kuzya-positivity", kr.min_eigenvalue, 0.0, std::max(0.0, -kr.min_eigenvalue),
          1e-10 * scale);
  const RealVector spectrum = hermitian_eigenvalues(nystrom_green_kernel(sc.potential.sample(grid), grid, sc.kernel_z).matrix);
  SsfTable st{"spectrum", {"index", "eigenvalue"}, {}};
  for (Index k = spectrum.size(); k-- > 0;) st.rows.push_back({static_cast<double>(spectrum.size() - 1 - k), spectrum(k)});
  rep.tables.push_back(std::move(st));
  rep.diagnostics["diagonal_integral"] = kr.diagonal_integral;
  rep.diagnostics["closed_form"] = kr.closed_form;

  if (!sc.n_list.empty()) {
    const MonotoneReport mr = monotone_s1_check(sc.potential, grid, sc.n_list, sc.variant);
    rep.flags["approx_nondecreasing"] = mr.approx_nondecreasing;
    rep.flags["gap_nonincreasing"] = mr.gap_nonincreasing;
    rep.add("monotone_approx", "monotone-s1", mr.approx_nondecreasing ? 0 : 1, 0, mr.approx_nondecreasing ? 0.0 : 1.0, 0.0);
    rep.add("monotone_gap", "monotone-s1", mr.gap_nonincreasing ? 0 : 1, 0, mr.gap_nonincreasing ? 0.0 : 1.0, 0.0);
    for (std::size_t k = 0; k < mr.n.size(); ++k) {
      const double target = mr.full_norm / mr.n[k];
      if (sc.variant == MonotoneVariant::Multiplicative) {
        rep.add(indexed("monotone_gap_identity", k), "monotone-s1", mr.gap_norm[k], target,
                std::fabs(mr.gap_norm[k] - target), 1e-10 * scale);
      }
    }
    const double last_target = mr.full_norm / mr.n.back();
    rep.add("monotone_final_gap", "monotone-s1", mr.gap_norm.back(), last_target,
            std::max(0.0, mr.gap_norm.back() - last_target), 1e-10 * scale);
    rep.diagnostics["monotone"] = {{"n", mr.n}, {"approx_norm", mr.approx_norm}, {"gap_norm", mr.gap_norm},
                                   {"full_norm", mr.full_norm}};
  }
}

}  // namespace

Report run_scenario(const Scenario& sc, double tolerance_scale) {
  Report rep;
  rep.scenario = sc.name;
  rep.kind = std::string(to_string(sc.kind));
  rep.library_version = SSF_LAB_VERSION;
  rep.config_hash = fnv1a_hex(sc.document.dump() + "|scale=" + format_number(tolerance_scale));
  try {
    switch (sc.kind) {
      case ScenarioKind::UnitaryPair: run_unitary(rep, sc, tolerance_scale); break;
      case ScenarioKind::ContractionPair: run_contraction(rep, sc, tolerance_scale); break;
      case ScenarioKind::DissipativePair: run_dissipative(rep, sc, tolerance_scale); break;
      case ScenarioKind::Fractional: run_fractional(rep, sc, tolerance_scale); break;
      case ScenarioKind::Schrodinger: run_schrodinger(rep, sc, tolerance_scale); break;
      case ScenarioKind::Kuzya: run_kuzya(rep, sc, tolerance_scale); break;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    rep.error = e.what();
  }
  return rep;
}

int run_file(const std::filesystem::path& path, const RunOptions& opt, std::string* message) {
  try {
    const Scenario sc = load_scenario(path);
    const Report rep = run_scenario(sc, opt.tolerance_scale);
    std::filesystem::create_directories(opt.out_dir);
    const std::string base = (opt.out_dir / sc.name).string();
    write_text(base + ".report.json", rep.to_json().dump(2) + "\n");
    for (const SsfTable& t : rep.tables) {
      const bool step = t.type == "circle_step" || t.type == "line_step";
      if (sc.wants("csv")) {
        const char* suffix = step ? ".ssf.csv" : t.type == "circle_sampled" ? ".sampled.csv" : ".spectrum.csv";
        write_text(base + suffix, to_csv(t));
      }
      if (step && sc.wants("svg")) {
        PlotOptions po;
        po.window = sc.plot_window;
        po.title = sc.name;
        write_text(base + ".svg", render_svg(t, po));
      }
    }
    std::size_t failed = 0;
    for (const auto& r : rep.records) failed += r.pass ? 0 : 1;
    if (message) {
      *message = sc.name + ": " + std::to_string(rep.records.size() - failed) + "/" + std::to_string(rep.records.size()) +
                 " checks pass";
      if (!rep.error.empty()) *message += " (aborted: " + rep.error + ")";
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    if (message) *message = path.string() + ": " + e.what();
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    if (message) *message = path.string() + ": " + e.what();
    return 2;
  }
}

int run_batch(const std::vector<std::filesystem::path>& paths, const RunOptions& opt, unsigned workers) {
  std::vector<int> codes(paths.size(), 0);
  std::vector<std::string> messages(paths.size());
  std::atomic<std::size_t> next{0};
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(paths.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) codes[i] = run_file(paths[i], opt, &messages[i]);
      });
    }
  }
  for (const auto& m : messages) std::cout << m << "\n";
  return codes.empty() ? 0 : *std::max_element(codes.begin(), codes.end());
}

}  // namespace ssf::app
