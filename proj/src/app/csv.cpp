#include "ssf/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ssf/error.hpp"

namespace ssf::app {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::SchemaError, "malformed number '" + std::string(s) + "'");
  return v;
}

SsfTable step_table(const StepSSF& ssf) {
  SsfTable t{"circle_step", {"theta_start", "theta_end", "value"}, {}};
  for (const auto& a : ssf.arcs()) t.rows.push_back({a.theta_start, a.theta_end, a.value});
  return t;
}

SsfTable sampled_table(const SampledSSF& ssf) {
  SsfTable t{"circle_sampled", {"theta", "xi"}, {}};
  t.rows.reserve(ssf.thetas.size());
  for (std::size_t j = 0; j < ssf.thetas.size(); ++j) t.rows.push_back({ssf.thetas[j], ssf.values[j]});
  return t;
}

SsfTable line_table(const LineSSF& ssf) {
  SsfTable t{"line_step", {"t_start", "t_end", "value"}, {}};
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ssf.values.size(); ++k) {
    const double lo = k == 0 ? -inf : ssf.breakpoints[k - 1];
    const double hi = k < ssf.breakpoints.size() ? ssf.breakpoints[k] : inf;
    t.rows.push_back({lo, hi, ssf.values[k]});
  }
  return t;
}

std::string to_csv(const SsfTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

SsfTable from_csv(std::string_view text) {
  SsfTable t;
  std::size_t pos = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (header) {
      for (auto c : cells) t.columns.emplace_back(trim(c));
      const std::string joined = std::string(line);
      if (joined == "theta_start,theta_end,value") t.type = "circle_step";
      else if (joined == "theta,xi") t.type = "circle_sampled";
      else if (joined == "t_start,t_end,value") t.type = "line_step";
      else if (joined == "index,eigenvalue") t.type = "spectrum";
      else throw Error(ErrorKind::SchemaError, "unrecognized SSF table header '" + joined + "'");
      header = false;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw Error(ErrorKind::SchemaError, "row " + std::to_string(line_no) + " has the wrong number of cells");
    std::vector<double> row;
    for (auto c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  if (header) throw Error(ErrorKind::SchemaError, "empty SSF table");
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ssf::app
