#include "ssf/app/generate.hpp"

#include "ssf/error.hpp"
#include "ssf/random.hpp"

namespace ssf::app {

json generate_scenario(ScenarioKind kind, std::uint64_t seed, int dim) {
  if (dim < 1 || dim > 512) throw Error(ErrorKind::InvalidParameter, "dim must lie in [1, 512]");
  Rng rng(seed);
  const auto n = static_cast<Index>(dim);
  json doc;
  doc["name"] = std::string(to_string(kind)) + "_seed" + std::to_string(seed) + "_dim" + std::to_string(dim);
  doc["kind"] = std::string(to_string(kind));
  const json monomials = json::array({json::array({0, 1}), json::array({0, 0, 1}), json::array({0, 0, 0, 1})});

  switch (kind) {
    case ScenarioKind::UnitaryPair:
      doc["matrices"]["u0"] = matrix_to_json(random_unitary(rng, n));
      doc["matrices"]["u1"] = matrix_to_json(random_unitary(rng, n));
      doc["test_polynomials"] = monomials;
      break;
    case ScenarioKind::ContractionPair:
      doc["matrices"]["t0"] = matrix_to_json(random_contraction(rng, n));
      doc["matrices"]["t1"] = matrix_to_json(random_contraction(rng, n));
      doc["test_polynomials"] = monomials;
      doc["dilation_order"] = 6;
      break;
    case ScenarioKind::DissipativePair:
      doc["matrices"]["l0"] = matrix_to_json(random_dissipative(rng, n));
      doc["matrices"]["l1"] = matrix_to_json(random_dissipative(rng, n));
      doc["dilation_order"] = 30;
      doc["z_values"] = json::array({json::array({0.0, -2.0}), json::array({-1.0, -1.0})});
      break;
    case ScenarioKind::Fractional: {
      doc["matrices"]["x"] = matrix_to_json(random_hermitian_spectrum(rng, n, 0.05, 1.0));
      doc["matrices"]["y"] = matrix_to_json(random_hermitian_spectrum(rng, n, 0.05, 1.0));
      const double sigma = rng.uniform(0.1, 0.9);
      const double total = rng.uniform(1.0 - sigma, 1.0);
      const double share = rng.uniform();
      doc["sigma"] = sigma;
      doc["alpha"] = total * share;
      doc["beta"] = total * (1.0 - share);
      doc["p"] = rng.integer(1, 2);
      break;
    }
    case ScenarioKind::Schrodinger:
      doc["potential"] = {{"kind", "gaussian"}, {"amplitude", rng.uniform(0.5, 2.0)}, {"width", 1.0}};
      doc["grid"] = {{"lo", -4.0}, {"hi", 4.0}, {"nodes", dim}};
      doc["dilation_order"] = 24;
      doc["z_values"] = json::array({json::array({0.0, -2.0})});
      break;
    case ScenarioKind::Kuzya:
      doc["potential"] = {{"kind", "gaussian"}, {"amplitude", rng.uniform(0.5, 2.0)}, {"width", rng.uniform(0.5, 1.5)}};
      doc["grid"] = {{"lo", -8.0}, {"hi", 8.0}, {"nodes", 16 * dim}};
      doc["n_list"] = json::array({2, 4, 8, 16, 32, 64, 128});
      break;
  }
  return doc;
}

}  // namespace ssf::app
