#pragma once

#include <string>
#include <vector>

#include "ssf/app/matrix_json.hpp"

namespace ssf::app {

/// Anchor identifiers a report record may carry; each names the identity or
/// bound the record verifies.
const std::vector<std::string>& known_anchors();
bool is_known_anchor(const std::string& anchor);

struct CheckRecord {
  std::string check_id;
  std::string anchor;
  json lhs;
  json rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SsfTable {
  std::string type;  // circle_step, circle_sampled, line_step
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool empty() const { return rows.empty(); }
};

struct Report {
  std::string scenario;
  std::string kind;
  std::vector<CheckRecord> records;
  json flags = json::object();
  json diagnostics = json::object();
  std::vector<SsfTable> tables;
  std::string config_hash;
  std::string library_version;
  std::string error;  // set when the run aborted with a numeric error

  /// Appends a record with pass = residual <= tolerance.
  CheckRecord& add(std::string check_id, std::string anchor, json lhs, json rhs, double residual, double tolerance);
  bool all_pass() const;

  /// Report JSON. The timestamp field is the only nondeterministic entry.
  json to_json(bool with_timestamp = true) const;
};

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace ssf::app
