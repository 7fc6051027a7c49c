#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "ssf/app/csv.hpp"
#include "ssf/app/generate.hpp"
#include "ssf/app/matrix_json.hpp"
#include "ssf/app/report.hpp"
#include "ssf/app/runner.hpp"
#include "ssf/app/scenario.hpp"
#include "ssf/app/svg.hpp"
#include "ssf/line.hpp"

using namespace ssf;
using namespace ssf::app;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ssf_lab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_doc(const fs::path& dir, const json& doc) {
  const fs::path p = dir / (doc.value("name", std::string("doc")) + ".json");
  write_text(p, doc.dump(2));
  return p;
}

const CheckRecord* find_record(const Report& r, const std::string& id) {
  for (const auto& rec : r.records)
    if (rec.check_id == id) return &rec;
  return nullptr;
}

json fractional_scalar_doc() {
  return {{"name", "frac_scalar"},
          {"kind", "fractional"},
          {"matrices", {{"x", {{0.25}}}, {"y", {{0.75}}}}},
          {"sigma", 0.5},
          {"alpha", 1.0},
          {"beta", 0.0},
          {"p", 1}};
}

SsfTable scalar_line_table() {
  return line_table(pushforward(unitary_ssf(Unitary(testing::scalar(1.0)), Unitary(testing::scalar(kI)))));
}

}  // namespace

TEST_CASE("complex and matrix JSON") {
  CHECK(complex_from_json(json::parse("[1.5, -2]"), "z") == Complex{1.5, -2.0});
  CHECK(complex_from_json(json::parse("3"), "z") == Complex{3.0, 0.0});
  CHECK_ERROR_KIND(complex_from_json(json::parse("[1, 2, 3]"), "z"), ErrorKind::SchemaError);
  CHECK_ERROR_KIND(complex_from_json(json::parse("\"x\""), "z"), ErrorKind::SchemaError);

  const ComplexMatrix m = testing::mat({{1.0, Complex{0.0, 2.0}}, {Complex{-1.0, 0.5}, 0.0}});
  CHECK(frobenius(matrix_from_json(matrix_to_json(m), "m") - m) == 0.0);
  CHECK_ERROR_KIND(matrix_from_json(json::parse("[[1, 2], [3]]"), "m"), ErrorKind::SchemaError);
  CHECK_ERROR_KIND(matrix_from_json(json::parse("[]"), "m"), ErrorKind::SchemaError);
  CHECK(polynomial_from_json(json::parse("[0, [0, 1]]"), "f")[1] == kI);
}

TEST_CASE("scenario parsing") {
  const Scenario sc = parse_scenario(fractional_scalar_doc());
  CHECK(sc.kind == ScenarioKind::Fractional);
  CHECK(sc.sigma == 0.5);
  CHECK(sc.wants("json"));
  CHECK(sc.wants("svg"));

  json bad = fractional_scalar_doc();
  bad["unknown_field"] = 1;
  CHECK_ERROR_KIND(parse_scenario(bad), ErrorKind::SchemaError);
  bad = fractional_scalar_doc();
  bad["kind"] = "nonsense";
  CHECK_ERROR_KIND(parse_scenario(bad), ErrorKind::SchemaError);
  bad = fractional_scalar_doc();
  bad["matrices"].erase("y");
  CHECK_ERROR_KIND(parse_scenario(bad), ErrorKind::SchemaError);
  bad = fractional_scalar_doc();
  bad["matrices"]["y"] = {{0.5, 0.0}, {0.0, 0.5}};
  CHECK_ERROR_KIND(parse_scenario(bad), ErrorKind::SchemaError);
  bad = fractional_scalar_doc();
  bad["outputs"] = {"pdf"};
  CHECK_ERROR_KIND(parse_scenario(bad), ErrorKind::SchemaError);
  CHECK_ERROR_KIND(load_scenario("/nonexistent/file.json"), ErrorKind::IoError);

  const json r = {{"name", "rnd"},
                  {"kind", "contraction_pair"},
                  {"matrices",
                   {{"t0", {{"random", {{"seed", 3}, {"dim", 3}, {"class", "contraction"}}}}},
                    {"t1", {{"random", {{"seed", 4}, {"dim", 3}, {"class", "contraction"}, {"allow_boundary", true}}}}}}}};
  const Scenario rs = parse_scenario(r);
  CHECK(rs.matrix("t0").rows() == 3);
  CHECK(spectral_norm(rs.matrix("t1")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_norm(rs.matrix("t0")) < 1.0);
  CHECK(frobenius(parse_scenario(r).matrix("t0") - rs.matrix("t0")) == 0.0);
}

TEST_CASE("unitary pair with itself reports zero residuals") {
  Rng rng(2);
  const json doc = {{"name", "same_unitary"},
                    {"kind", "unitary_pair"},
                    {"matrices", {{"u0", matrix_to_json(random_unitary(rng, 3))}}}};
  json d = doc;
  d["matrices"]["u1"] = d["matrices"]["u0"];
  const Report rep = run_scenario(parse_scenario(d));
  CHECK(rep.error.empty());
  CHECK(rep.all_pass());
  for (const auto& rec : rep.records) {
    // The gauge records integrate f' zeta^k by trapezoid sums, independent of the pair.
    if (rec.anchor == "hardy-gauge") CHECK(rec.residual <= 1e-14);
    else CHECK_MESSAGE(rec.residual == 0.0, rec.check_id);
  }

  const fs::path dir = scratch("same");
  std::string msg;
  CHECK(run_file(write_doc(dir, d), {dir / "out", 1.0}, &msg) == 0);
  CHECK(fs::exists(dir / "out" / "same_unitary.report.json"));
  CHECK(fs::exists(dir / "out" / "same_unitary.ssf.csv"));
  CHECK(fs::exists(dir / "out" / "same_unitary.svg"));
}

TEST_CASE("fractional scalar report") {
  const Report rep = run_scenario(parse_scenario(fractional_scalar_doc()));
  const CheckRecord* b = find_record(rep, "fractional_bound");
  REQUIRE(b);
  CHECK(b->lhs.get<double>() == doctest::Approx(0.3660).epsilon(1e-4));
  CHECK(b->rhs.get<double>() == doctest::Approx(1.5915).epsilon(1e-4));
  CHECK(b->pass);
  CHECK(rep.all_pass());
}

TEST_CASE("rank-one imaginary bump flags the trace obstruction") {
  Rng rng(8);
  const ComplexMatrix l0 = random_dissipative(rng, 3);
  ComplexMatrix l1 = l0;
  l1(0, 0) += kI;
  const json doc = {{"name", "bump"},
                    {"kind", "dissipative_pair"},
                    {"matrices", {{"l0", matrix_to_json(l0)}, {"l1", matrix_to_json(l1)}}}};
  const Report rep = run_scenario(parse_scenario(doc));
  CHECK(rep.flags["real_integrable_possible"] == false);
  CHECK(complex_from_json(rep.diagnostics["trace_v"], "v") == Complex{0.0, 1.0});

  json sa = doc;
  sa["matrices"]["l1"] = matrix_to_json(l0 + identity(3));
  CHECK(run_scenario(parse_scenario(sa)).flags["real_integrable_possible"] == true);
}

TEST_CASE("every record carries a known anchor") {
  const fs::path dir = scratch("anchors");
  for (const std::string& k : kind_names()) {
    const Scenario sc = parse_scenario(generate_scenario(*parse_kind(k), 5, 3));
    const Report rep = run_scenario(sc);
    CHECK_MESSAGE(rep.error.empty(), k);
    CHECK_MESSAGE(!rep.records.empty(), k);
    for (const auto& rec : rep.records) {
      CHECK_MESSAGE(is_known_anchor(rec.anchor), rec.anchor);
      CHECK(rec.pass == (rec.residual <= rec.tolerance));
    }
  }
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  const json doc = generate_scenario(ScenarioKind::ContractionPair, 11, 3);
  json a = run_scenario(parse_scenario(doc)).to_json();
  json b = run_scenario(parse_scenario(doc)).to_json();
  CHECK(a.contains("timestamp"));
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a.dump() == b.dump());
  const Report r = run_scenario(parse_scenario(doc));
  CHECK(r.config_hash == run_scenario(parse_scenario(doc)).config_hash);
  CHECK(r.config_hash != run_scenario(parse_scenario(doc), 2.0).config_hash);
  CHECK(r.config_hash.size() == 16);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  json bad = fractional_scalar_doc();
  bad["name"] = "schema_bad";
  bad["sigma"] = "half";
  CHECK(run_file(write_doc(dir, bad), {dir, 1.0}) == 2);

  json fail = fractional_scalar_doc();
  fail["name"] = "numeric_fail";
  fail["quadrature_nodes"] = 32;
  CHECK(run_file(write_doc(dir, fail), {dir, 1e-6}) == 1);
  CHECK(fs::exists(dir / "numeric_fail.report.json"));

  json err = {{"name", "numeric_error"},
              {"kind", "fractional"},
              {"matrices", {{"x", {{0.0}}}, {"y", {{0.75}}}}},
              {"sigma", 0.5}};
  CHECK(run_file(write_doc(dir, err), {dir, 1.0}) == 1);
  const json rep = json::parse(read_text(dir / "numeric_error.report.json"));
  CHECK(rep.contains("error"));
  CHECK(rep["pass"] == false);

  const std::vector<fs::path> batch{write_doc(dir, fractional_scalar_doc()), dir / "schema_bad.json"};
  CHECK(run_batch(batch, {dir, 1.0}, 2) == 2);
}

TEST_CASE("generate") {
  const json a = generate_scenario(ScenarioKind::ContractionPair, 7, 4);
  CHECK(a.dump() == generate_scenario(ScenarioKind::ContractionPair, 7, 4).dump());
  CHECK(a["name"] == "contraction_pair_seed7_dim4");
  const Scenario sc = parse_scenario(a);
  CHECK(spectral_norm(sc.matrix("t0")) <= 1.0);

  const Scenario u = parse_scenario(generate_scenario(ScenarioKind::UnitaryPair, 1, 3));
  CHECK_NOTHROW(Unitary(u.matrix("u0")));
  CHECK_NOTHROW(Unitary(u.matrix("u1")));
  const Scenario d = parse_scenario(generate_scenario(ScenarioKind::DissipativePair, 9, 5));
  CHECK_NOTHROW(Dissipative(d.matrix("l0")));
  CHECK_NOTHROW(Dissipative(d.matrix("l1")));
  CHECK(d.matrix("l0").rows() == 5);
  CHECK(generate_scenario(ScenarioKind::UnitaryPair, 1, 3).dump() != generate_scenario(ScenarioKind::UnitaryPair, 2, 3).dump());
}

TEST_CASE("CSV tables") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(std::isinf(parse_number("inf")));
  CHECK_ERROR_KIND(parse_number("1.0x"), ErrorKind::SchemaError);

  const SsfTable line = scalar_line_table();
  const std::string csv = to_csv(line);
  CHECK(csv.rfind("t_start,t_end,value\n-inf,", 0) == 0);
  CHECK(csv.find(",inf,") != std::string::npos);
  const SsfTable back = from_csv(csv);
  CHECK(back.type == "line_step");
  REQUIRE(back.rows.size() == line.rows.size());
  for (std::size_t i = 0; i < line.rows.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(back.rows[i][j] == line.rows[i][j]);

  Rng rng(4);
  const SampledSSF s = determinant_ssf(Contraction(random_contraction(rng, 2)), Contraction(random_contraction(rng, 2)),
                                       DeterminantOptions{1.0 + 1e-4, 256, 1024});
  const SsfTable st = from_csv(to_csv(sampled_table(s)));
  CHECK(st.type == "circle_sampled");
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(st.rows[i][1] == s.values[i]);

  CHECK_ERROR_KIND(from_csv("a,b\n1,2\n"), ErrorKind::SchemaError);
  CHECK_ERROR_KIND(from_csv("theta,xi\n1\n"), ErrorKind::SchemaError);
  CHECK_ERROR_KIND(read_text("/nonexistent/table.csv"), ErrorKind::IoError);
}

TEST_CASE("SVG plots") {
  const std::string flat = render_svg(step_table(StepSSF({}, 0.0)));
  CHECK(flat.find("<polyline") != std::string::npos);
  CHECK(flat.find("</svg>") != std::string::npos);

  const StepSSF s = unitary_ssf(Unitary(testing::scalar(1.0)), Unitary(testing::scalar(kI)));
  const SsfTable st = step_table(s);
  REQUIRE(st.rows.size() == 2);
  CHECK(st.rows[0][2] == doctest::Approx(0.75));
  CHECK(st.rows[1][0] == doctest::Approx(kPi / 2));
  CHECK(st.rows[1][2] == doctest::Approx(-0.25));
  CHECK(render_svg(st).find("<polyline") != std::string::npos);

  const std::string line = render_svg(scalar_line_table());
  CHECK(line.find("\xce\xbe(\xe2\x88\x92\xe2\x88\x9e) = 0.75") != std::string::npos);
  CHECK(line.find("\xce\xbe(+\xe2\x88\x9e) = -0.25") != std::string::npos);

  const std::string golden = read_text(fs::path(SSF_TEST_DATA_DIR) / "golden" / "line_ssf.svg");
  CHECK(line == golden);

  PlotOptions wide;
  wide.window = 10.0;
  CHECK(render_svg(scalar_line_table(), wide) != line);
  CHECK_ERROR_KIND(render_svg(SsfTable{"spectrum", {"index", "eigenvalue"}, {}}), ErrorKind::InvalidParameter);
}

TEST_CASE("kuzya scenario writes the kernel spectrum") {
  const fs::path dir = scratch("kuzya");
  json doc = generate_scenario(ScenarioKind::Kuzya, 3, 2);
  doc["name"] = "kz";
  CHECK(run_file(write_doc(dir, doc), {dir, 1.0}) == 0);
  const SsfTable t = from_csv(read_text(dir / "kz.spectrum.csv"));
  CHECK(t.type == "spectrum");
  CHECK(t.rows.size() == 32);
  for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.rows[k][1] <= t.rows[k - 1][1]);
}
