#include "ssf/app/scenario.hpp"

#include <fstream>

#include "ssf/error.hpp"
#include "ssf/random.hpp"

namespace ssf::app {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) schema(std::string(key) + " must be a number");
  return v->get<double>();
}

double required_number(const json& obj, const char* key) {
  const json* v = find(obj, key);
  if (!v || !v->is_number()) schema(std::string("missing numeric field ") + key);
  return v->get<double>();
}

std::int64_t integer(const json& obj, const char* key, std::int64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) schema(std::string(key) + " must be an integer");
  return v->get<std::int64_t>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    if (!allowed.count(k)) schema("unknown field '" + k + "' in " + where);
  }
}

ComplexMatrix resolve_matrix(const json& spec, const std::string& key) {
  if (spec.is_object()) {
    check_keys(spec, {"random"}, "matrices." + key);
    const json& r = spec.at("random");
    check_keys(r, {"seed", "dim", "class", "margin", "allow_boundary", "lo", "hi"}, "matrices." + key + ".random");
    if (!find(r, "class") || !r["class"].is_string()) schema("matrices." + key + ".random.class missing");
    const std::int64_t seed = integer(r, "seed", -1);
    const std::int64_t dim = integer(r, "dim", 0);
    if (seed < 0) schema("matrices." + key + ".random.seed must be a nonnegative integer");
    if (dim < 1 || dim > 4096) schema("matrices." + key + ".random.dim out of range");
    return random_matrix(r["class"].get<std::string>(), static_cast<std::uint64_t>(seed), dim, r);
  }
  return matrix_from_json(spec, key.c_str());
}

PotentialDescriptor parse_potential(const json& j) {
  if (!j.is_object() || !find(j, "kind") || !j["kind"].is_string()) schema("potential.kind missing");
  const std::string kind = j["kind"].get<std::string>();
  PotentialDescriptor q;
  if (kind == "gaussian") {
    check_keys(j, {"kind", "amplitude", "center", "width"}, "potential");
    q.kind = PotentialDescriptor::Kind::Gaussian;
    q.amplitude = number(j, "amplitude", 1.0);
    q.center = number(j, "center", 0.0);
    q.width = number(j, "width", 1.0);
    if (!(q.width > 0.0)) schema("potential.width must be positive");
  } else if (kind == "bump") {
    check_keys(j, {"kind", "amplitude", "center", "half_width", "ramp"}, "potential");
    q.kind = PotentialDescriptor::Kind::Bump;
    q.amplitude = number(j, "amplitude", 1.0);
    q.center = number(j, "center", 0.0);
    q.half_width = number(j, "half_width", 1.0);
    q.ramp = number(j, "ramp", 0.5);
    if (!(q.half_width > 0.0) || q.ramp < 0.0 || q.ramp > 2.0 * q.half_width)
      schema("potential bump needs half_width > 0 and 0 <= ramp <= 2 half_width");
  } else if (kind == "table") {
    check_keys(j, {"kind", "x", "q"}, "potential");
    q.kind = PotentialDescriptor::Kind::Table;
    try {
      q.xs = j.at("x").get<std::vector<double>>();
      q.qs = j.at("q").get<std::vector<double>>();
    } catch (const json::exception&) {
      schema("potential table needs numeric arrays x and q");
    }
    if (q.xs.size() != q.qs.size() || q.xs.size() < 2) schema("potential table needs matching x, q of length >= 2");
    for (std::size_t k = 1; k < q.xs.size(); ++k)
      if (!(q.xs[k] > q.xs[k - 1])) schema("potential table x must be strictly increasing");
  } else {
    schema("unknown potential kind '" + kind + "'");
  }
  return q;
}

GridSpec parse_grid(const json& j, const GridSpec& defaults) {
  check_keys(j, {"lo", "hi", "nodes", "scheme"}, "grid");
  GridSpec g = defaults;
  g.lo = number(j, "lo", g.lo);
  g.hi = number(j, "hi", g.hi);
  const std::int64_t nodes = integer(j, "nodes", static_cast<std::int64_t>(g.nodes));
  if (nodes < 1 || nodes > 8192) schema("grid.nodes out of range");
  g.nodes = static_cast<std::size_t>(nodes);
  if (const json* s = find(j, "scheme")) {
    if (*s == "gauss_legendre") g.scheme = GridScheme::GaussLegendre;
    else if (*s == "trapezoid") g.scheme = GridScheme::Trapezoid;
    else schema("grid.scheme must be gauss_legendre or trapezoid");
  }
  if (!(g.hi > g.lo)) schema("grid needs hi > lo");
  return g;
}

Tolerances parse_tolerances(const json& j) {
  check_keys(j, {"contraction", "unitary", "dissipative", "hermitian", "sqrt_clamp", "phase_cluster",
                 "max_condition", "one_point"},
             "tolerances");
  Tolerances t;
  t.contraction = number(j, "contraction", t.contraction);
  t.unitary = number(j, "unitary", t.unitary);
  t.dissipative = number(j, "dissipative", t.dissipative);
  t.hermitian = number(j, "hermitian", t.hermitian);
  t.sqrt_clamp = number(j, "sqrt_clamp", t.sqrt_clamp);
  t.phase_cluster = number(j, "phase_cluster", t.phase_cluster);
  t.max_condition = number(j, "max_condition", t.max_condition);
  t.one_point = number(j, "one_point", t.one_point);
  return t;
}

std::vector<std::string> required_matrices(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::UnitaryPair: return {"u0", "u1"};
    case ScenarioKind::ContractionPair: return {"t0", "t1"};
    case ScenarioKind::DissipativePair: return {"l0", "l1"};
    case ScenarioKind::Fractional: return {"x", "y"};
    default: return {};
  }
}

}  // namespace

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::UnitaryPair: return "unitary_pair";
    case ScenarioKind::ContractionPair: return "contraction_pair";
    case ScenarioKind::DissipativePair: return "dissipative_pair";
    case ScenarioKind::Fractional: return "fractional";
    case ScenarioKind::Schrodinger: return "schrodinger";
    case ScenarioKind::Kuzya: return "kuzya";
  }
  return "unknown";
}

const std::vector<std::string>& kind_names() {
  static const std::vector<std::string> names = {"unitary_pair", "contraction_pair", "dissipative_pair",
                                                 "fractional",   "schrodinger",      "kuzya"};
  return names;
}

std::optional<ScenarioKind> parse_kind(std::string_view s) noexcept {
  for (ScenarioKind k : {ScenarioKind::UnitaryPair, ScenarioKind::ContractionPair, ScenarioKind::DissipativePair,
                         ScenarioKind::Fractional, ScenarioKind::Schrodinger, ScenarioKind::Kuzya})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

Grid1D GridSpec::build() const {
  return scheme == GridScheme::Trapezoid ? trapezoid_grid(lo, hi, nodes) : gauss_legendre_grid(lo, hi, nodes);
}

const ComplexMatrix& Scenario::matrix(const std::string& key) const {
  const auto it = matrices.find(key);
  if (it == matrices.end()) throw Error(ErrorKind::SchemaError, "matrix '" + key + "' missing");
  return it->second;
}

ComplexMatrix random_matrix(const std::string& cls, std::uint64_t seed, Index dim, const json& options) {
  Rng rng(seed);
  if (cls == "unitary") return random_unitary(rng, dim);
  if (cls == "contraction") {
    const bool boundary = options.is_object() && options.value("allow_boundary", false);
    return random_contraction(rng, dim, boundary ? 0.0 : number(options, "margin", 0.1));
  }
  if (cls == "dissipative") return random_dissipative(rng, dim);
  if (cls == "hermitian") return random_hermitian(rng, dim);
  if (cls == "unit_spectrum")
    return random_hermitian_spectrum(rng, dim, number(options, "lo", 0.05), number(options, "hi", 1.0));
  schema("unknown random matrix class '" + cls + "'");
}

Scenario parse_scenario(const json& doc) {
  check_keys(doc, {"name", "kind", "matrices", "dilation_order", "test_polynomials", "determinant", "z_values",
                   "window_radii", "tolerances", "outputs", "plot_window", "conditions", "sigma", "alpha", "beta",
                   "p", "quadrature_nodes", "potential", "grid", "coupling", "kernel_z", "n_list", "variant"},
             "scenario");
  Scenario sc;
  sc.document = doc;
  if (!find(doc, "name") || !doc["name"].is_string() || doc["name"].get<std::string>().empty())
    schema("scenario.name must be a nonempty string");
  sc.name = doc["name"].get<std::string>();
  if (sc.name.find_first_of("/\\") != std::string::npos) schema("scenario.name must not contain path separators");
  if (!find(doc, "kind") || !doc["kind"].is_string()) schema("scenario.kind missing");
  const auto kind = parse_kind(doc["kind"].get<std::string>());
  if (!kind) schema("unknown scenario kind '" + doc["kind"].get<std::string>() + "'");
  sc.kind = *kind;

  if (const json* t = find(doc, "tolerances")) sc.tolerances = parse_tolerances(*t);

  if (const json* m = find(doc, "matrices")) {
    if (!m->is_object()) schema("matrices must be an object");
    for (const auto& [k, v] : m->items()) sc.matrices.emplace(k, resolve_matrix(v, k));
  }
  const auto needed = required_matrices(sc.kind);
  for (const auto& key : needed)
    if (!sc.matrices.count(key)) schema("kind " + std::string(to_string(sc.kind)) + " requires matrix '" + key + "'");
  if (needed.size() == 2) {
    const ComplexMatrix& a = sc.matrices.at(needed[0]);
    const ComplexMatrix& b = sc.matrices.at(needed[1]);
    if (a.rows() != a.cols() || b.rows() != b.cols()) schema("matrices must be square");
    if (a.rows() != b.rows()) schema("matrices " + needed[0] + " and " + needed[1] + " differ in dimension");
  }

  if (const json* d = find(doc, "dilation_order")) {
    if (!d->is_number_integer() || d->get<int>() < 3) schema("dilation_order must be an integer >= 3");
    sc.dilation_order = d->get<int>();
  }
  if (const json* ps = find(doc, "test_polynomials")) {
    if (!ps->is_array()) schema("test_polynomials must be an array");
    for (const auto& p : *ps) sc.polynomials.push_back(polynomial_from_json(p, "test_polynomials"));
  } else {
    for (std::size_t k = 1; k <= 3; ++k) sc.polynomials.push_back(monomial(k));
  }
  if (const json* d = find(doc, "determinant")) {
    check_keys(*d, {"radius", "grid"}, "determinant");
    DeterminantOptions opt;
    opt.radius = number(*d, "radius", opt.radius);
    const std::int64_t g = integer(*d, "grid", static_cast<std::int64_t>(opt.grid));
    if (g < 256 || g > (std::int64_t{1} << 16)) schema("determinant.grid must lie in [256, 65536]");
    if (!(opt.radius >= 1.0 + 1e-8)) schema("determinant.radius must exceed 1");
    opt.grid = static_cast<std::size_t>(g);
    sc.determinant = opt;
  }
  if (const json* zs = find(doc, "z_values")) {
    if (!zs->is_array()) schema("z_values must be an array");
    for (const auto& z : *zs) sc.z_values.push_back(complex_from_json(z, "z_values"));
  } else {
    sc.z_values.push_back({0.0, -2.0});
  }
  if (const json* rs = find(doc, "window_radii")) {
    try {
      sc.window_radii = rs->get<std::vector<double>>();
    } catch (const json::exception&) {
      schema("window_radii must be a numeric array");
    }
  } else {
    sc.window_radii = {1.0, 10.0, 100.0};
  }
  if (const json* os = find(doc, "outputs")) {
    if (!os->is_array()) schema("outputs must be an array");
    for (const auto& o : *os) {
      if (!o.is_string() || (o != "json" && o != "csv" && o != "svg")) schema("outputs entries must be json, csv or svg");
      sc.outputs.insert(o.get<std::string>());
    }
  } else {
    sc.outputs = {"json", "csv", "svg"};
  }
  if (const json* w = find(doc, "plot_window")) {
    if (!w->is_number() || !(w->get<double>() > 0.0)) schema("plot_window must be a positive number");
    sc.plot_window = w->get<double>();
  }
  if (const json* c = find(doc, "conditions")) {
    check_keys(*c, {"alpha", "beta", "p"}, "conditions");
    sc.cond_alpha = number(*c, "alpha", sc.cond_alpha);
    sc.cond_beta = number(*c, "beta", sc.cond_beta);
    sc.cond_p = number(*c, "p", sc.cond_p);
  }

  if (sc.kind == ScenarioKind::Fractional) {
    sc.sigma = required_number(doc, "sigma");
    sc.alpha = number(doc, "alpha", sc.alpha);
    sc.beta = number(doc, "beta", sc.beta);
    sc.p = number(doc, "p", sc.p);
    const std::int64_t nodes = integer(doc, "quadrature_nodes", sc.quadrature_nodes);
    if (nodes < 32 || nodes > 100000) schema("quadrature_nodes must lie in [32, 100000]");
    sc.quadrature_nodes = static_cast<int>(nodes);
  }

  if (sc.kind == ScenarioKind::Schrodinger || sc.kind == ScenarioKind::Kuzya) {
    const json* q = find(doc, "potential");
    if (!q) schema("kind " + std::string(to_string(sc.kind)) + " requires a potential");
    sc.potential = parse_potential(*q);
    GridSpec defaults;
    if (sc.kind == ScenarioKind::Schrodinger) defaults = GridSpec{-4.0, 4.0, 64, GridScheme::Trapezoid};
    if (const json* g = find(doc, "grid")) sc.grid = parse_grid(*g, defaults);
    else sc.grid = defaults;
    if (const json* c = find(doc, "coupling")) sc.coupling = complex_from_json(*c, "coupling");
    if (const json* z = find(doc, "kernel_z")) sc.kernel_z = complex_from_json(*z, "kernel_z");
    if (const json* ns = find(doc, "n_list")) {
      try {
        sc.n_list = ns->get<std::vector<int>>();
      } catch (const json::exception&) {
        schema("n_list must be an integer array");
      }
    }
    if (const json* v = find(doc, "variant")) {
      if (*v == "multiplicative") sc.variant = MonotoneVariant::Multiplicative;
      else if (*v == "truncation") sc.variant = MonotoneVariant::Truncation;
      else schema("variant must be multiplicative or truncation");
    }
    if (sc.kind == ScenarioKind::Kuzya && sc.grid.scheme == GridScheme::GaussLegendre && sc.grid.nodes % 16 != 0)
      schema("Gauss-Legendre grids need a multiple of 16 nodes");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace ssf::app
