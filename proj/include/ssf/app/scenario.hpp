#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssf/app/matrix_json.hpp"
#include "ssf/circle.hpp"
#include "ssf/schrodinger.hpp"

namespace ssf::app {

enum class ScenarioKind { UnitaryPair, ContractionPair, DissipativePair, Fractional, Schrodinger, Kuzya };

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_kind(std::string_view s) noexcept;
const std::vector<std::string>& kind_names();

struct GridSpec {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t nodes = 512;
  GridScheme scheme = GridScheme::GaussLegendre;

  Grid1D build() const;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::UnitaryPair;
  json document;  // as read, used for hashing

  std::map<std::string, ComplexMatrix> matrices;
  std::vector<Polynomial> polynomials;
  std::optional<int> dilation_order;
  std::optional<DeterminantOptions> determinant;
  std::vector<Complex> z_values;
  std::vector<double> window_radii;
  Tolerances tolerances;
  std::set<std::string> outputs;
  std::optional<double> plot_window;

  // contraction_pair conditions report
  double cond_alpha = 1.0, cond_beta = 0.0, cond_p = 1.0;

  // fractional
  double sigma = 0.5, alpha = 1.0, beta = 0.0, p = 1.0;
  int quadrature_nodes = 200;

  // schrodinger / kuzya
  PotentialDescriptor potential;
  GridSpec grid;
  Complex coupling{0.0, 1.0};
  Complex kernel_z{-1.0, 0.0};
  std::vector<int> n_list;
  MonotoneVariant variant = MonotoneVariant::Multiplicative;

  const ComplexMatrix& matrix(const std::string& key) const;
  bool wants(const std::string& output) const { return outputs.count(output) > 0; }
};

/// Validates the document and resolves random matrix specs. Throws
/// Error(SchemaError) on any structural problem.
Scenario parse_scenario(const json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Seeded matrix of class unitary, contraction, dissipative, hermitian or
/// unit_spectrum. Shared by random specs and the generate command.
ComplexMatrix random_matrix(const std::string& cls, std::uint64_t seed, Index dim, const json& options = json::object());

}  // namespace ssf::app
