#include "ssf/app/matrix_json.hpp"

#include "ssf/error.hpp"

namespace ssf::app {

namespace {

[[noreturn]] void schema(const char* what, const std::string& msg) {
  throw Error(ErrorKind::SchemaError, std::string(what) + ": " + msg);
}

}  // namespace

Complex complex_from_json(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  schema(what, "expected a number or an [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) schema(what, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) schema(what, "rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix a(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema(what, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      a(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(j[r][c], what);
  }
  return a;
}

json matrix_to_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < a.cols(); ++c) row.push_back(complex_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Polynomial polynomial_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) schema(what, "expected a nonempty coefficient list");
  Polynomial p;
  p.reserve(j.size());
  for (const auto& c : j) p.push_back(complex_from_json(c, what));
  return p;
}

}  // namespace ssf::app
