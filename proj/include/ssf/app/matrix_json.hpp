#pragma once

// JSON encoding of complex scalars and matrices: a complex number is
// [re, im] (a bare number is read as real), a matrix is a row-major array of
// rows.

#include <json.hpp>

#include "ssf/linalg.hpp"

namespace ssf::app {

using json = nlohmann::json;

Complex complex_from_json(const json& j, const char* what);
json complex_to_json(Complex z);

ComplexMatrix matrix_from_json(const json& j, const char* what);
json matrix_to_json(const ComplexMatrix& a);

Polynomial polynomial_from_json(const json& j, const char* what);

}  // namespace ssf::app
