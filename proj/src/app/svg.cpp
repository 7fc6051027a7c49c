#include "ssf/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ssf/error.hpp"
#include "ssf/linalg.hpp"

namespace ssf::app {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  int width, height;
  static constexpr double left = 64, right = 24, top = 36, bottom = 44;

  double sx(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double sy(double y) const { return top + (y1 - y) / (y1 - y0) * (height - top - bottom); }
};

struct Point {
  double x, y;
};

void value_range(const std::vector<double>& vals, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  } else {
    const double pad = 0.1 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

std::string polyline(const Frame& f, const std::vector<Point>& pts) {
  std::string s = "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) s += ' ';
    s += fmt(f.sx(pts[k].x)) + "," + fmt(f.sy(pts[k].y));
  }
  return s + "\"/>\n";
}

std::string text(double x, double y, const std::string& body, const char* anchor = "middle") {
  return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor + "\">" + body + "</text>\n";
}

std::string axes(const Frame& f, const std::vector<std::pair<double, std::string>>& xticks, const std::string& xname) {
  std::string s;
  const double xb = f.sx(f.x0), xe = f.sx(f.x1), yb = f.sy(f.y0), ye = f.sy(f.y1);
  s += "<rect x=\"" + fmt(xb) + "\" y=\"" + fmt(ye) + "\" width=\"" + fmt(xe - xb) + "\" height=\"" + fmt(yb - ye) +
       "\" fill=\"none\" stroke=\"#444\"/>\n";
  if (f.y0 < 0.0 && f.y1 > 0.0)
    s += "<line x1=\"" + fmt(xb) + "\" y1=\"" + fmt(f.sy(0.0)) + "\" x2=\"" + fmt(xe) + "\" y2=\"" + fmt(f.sy(0.0)) +
         "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& [x, name] : xticks) {
    s += "<line x1=\"" + fmt(f.sx(x)) + "\" y1=\"" + fmt(yb) + "\" x2=\"" + fmt(f.sx(x)) + "\" y2=\"" + fmt(yb + 5) +
         "\" stroke=\"#444\"/>\n";
    s += text(f.sx(x), yb + 18, name);
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = f.y0 + (f.y1 - f.y0) * k / 4.0;
    s += "<line x1=\"" + fmt(xb - 5) + "\" y1=\"" + fmt(f.sy(y)) + "\" x2=\"" + fmt(xb) + "\" y2=\"" + fmt(f.sy(y)) +
         "\" stroke=\"#444\"/>\n";
    s += text(xb - 8, f.sy(y) + 4, label(y), "end");
  }
  s += text(0.5 * (xb + xe), f.height - 6.0, xname);
  return s;
}

std::string header(int w, int h, const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
       "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) s += text(w / 2.0, 20.0, title);
  return s;
}

double default_window(const SsfTable& t) {
  double m = 0.0;
  for (const auto& r : t.rows)
    for (int c = 0; c < 2; ++c)
      if (std::isfinite(r[c])) m = std::max(m, std::fabs(r[c]));
  return std::clamp(1.25 * m, 1.0, 50.0);
}

}  // namespace

std::string render_svg(const SsfTable& table, const PlotOptions& opt) {
  std::vector<double> vals;
  const bool sampled = table.type == "circle_sampled";
  for (const auto& r : table.rows) vals.push_back(sampled ? r[1] : r[2]);
  double lo, hi;
  value_range(vals, lo, hi);
  std::string s = header(opt.width, opt.height, opt.title);

  if (table.type == "circle_step" || sampled) {
    const Frame f{0.0, kTwoPi, lo, hi, opt.width, opt.height};
    s += axes(f, {{0.0, "0"}, {0.5 * kPi, "\xcf\x80/2"}, {kPi, "\xcf\x80"}, {1.5 * kPi, "3\xcf\x80/2"}, {kTwoPi, "2\xcf\x80"}},
              "\xce\xb8");
    std::vector<Point> pts;
    if (sampled) {
      for (const auto& r : table.rows) pts.push_back({r[0], r[1]});
    } else if (table.rows.empty()) {
      pts = {{0.0, 0.0}, {kTwoPi, 0.0}};
    } else {
      for (const auto& r : table.rows) {
        pts.push_back({r[0], r[2]});
        pts.push_back({r[1], r[2]});
      }
    }
    s += polyline(f, pts);
  } else if (table.type == "line_step") {
    const double w = opt.window.value_or(default_window(table));
    const Frame f{-w, w, lo, hi, opt.width, opt.height};
    s += axes(f, {{-w, label(-w)}, {-0.5 * w, label(-0.5 * w)}, {0.0, "0"}, {0.5 * w, label(0.5 * w)}, {w, label(w)}},
              "t");
    std::vector<Point> pts;
    for (const auto& r : table.rows) {
      const double a = std::clamp(r[0], -w, w), b = std::clamp(r[1], -w, w);
      if (b <= a) continue;
      pts.push_back({a, r[2]});
      pts.push_back({b, r[2]});
    }
    if (pts.empty()) pts = {{-w, 0.0}, {w, 0.0}};
    s += polyline(f, pts);
    const double left_tail = table.rows.empty() ? 0.0 : table.rows.front()[2];
    const double right_tail = table.rows.empty() ? 0.0 : table.rows.back()[2];
    s += text(f.sx(-w) + 6, f.sy(hi) + 14, "\xce\xbe(\xe2\x88\x92\xe2\x88\x9e) = " + label(left_tail), "start");
    s += text(f.sx(w) - 6, f.sy(hi) + 14, "\xce\xbe(+\xe2\x88\x9e) = " + label(right_tail), "end");
  } else {
    throw Error(ErrorKind::InvalidParameter, "cannot plot table of type '" + table.type + "'");
  }
  s += "</svg>\n";
  return s;
}

}  // namespace ssf::app
