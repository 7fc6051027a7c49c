#pragma once

#include <cstdint>

#include "ssf/app/scenario.hpp"

namespace ssf::app {

/// Self-contained scenario document for a seeded random instance. The same
/// (kind, seed, dim) always yields the same document.
json generate_scenario(ScenarioKind kind, std::uint64_t seed, int dim);

}  // namespace ssf::app
