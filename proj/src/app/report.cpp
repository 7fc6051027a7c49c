#include "ssf/app/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace ssf::app {

const std::vector<std::string>& known_anchors() {
  static const std::vector<std::string> anchors = {
      "unitary-trace-formula",   "ssf-jump-balance",        "determinant-step-consistency",
      "determinant-trace",       "dilation-unitarity",      "dilation-power",
      "dilation-julia-support",  "dilation-trace",          "contraction-trace-formula",
      "defect-square-identity",  "hardy-gauge",             "cayley-difference",
      "cayley-defect",           "cayley-defect-adjoint",   "weighted-integrability",
      "resolvent-trace-formula", "trace-v",                 "fractional-bound",
      "fractional-quadrature",   "resolvent-difference",    "discrete-dissipativity",
      "kuzya-trace",             "kuzya-trace-norm",        "kuzya-positivity",
      "monotone-s1",
  };
  return anchors;
}

bool is_known_anchor(const std::string& anchor) {
  const auto& a = known_anchors();
  return std::find(a.begin(), a.end(), anchor) != a.end();
}

CheckRecord& Report::add(std::string check_id, std::string anchor, json lhs, json rhs, double residual,
                         double tolerance) {
  CheckRecord r;
  r.check_id = std::move(check_id);
  r.anchor = std::move(anchor);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  records.push_back(std::move(r));
  return records.back();
}

bool Report::all_pass() const {
  return error.empty() && std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

json Report::to_json(bool with_timestamp) const {
  json j;
  j["scenario"] = scenario;
  j["kind"] = kind;
  j["pass"] = all_pass();
  json recs = json::array();
  for (const auto& r : records) {
    recs.push_back({{"check_id", r.check_id},
                    {"anchor", r.anchor},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"residual", r.residual},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  j["records"] = std::move(recs);
  j["flags"] = flags;
  j["diagnostics"] = diagnostics;
  json tabs = json::array();
  for (const auto& t : tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json r = json::array();
      for (double v : row) {
        // JSON has no infinities; unbounded line intervals are spelled out.
        if (std::isinf(v)) r.push_back(v > 0 ? "inf" : "-inf");
        else r.push_back(v);
      }
      rows.push_back(std::move(r));
    }
    tabs.push_back({{"type", t.type}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["ssf_tables"] = std::move(tabs);
  j["provenance"] = {{"config_hash", config_hash}, {"library_version", library_version}};
  if (!error.empty()) j["error"] = error;
  if (with_timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = buf;
  }
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ssf::app
