#pragma once

#include <optional>
#include <string>

#include "ssf/app/report.hpp"

namespace ssf::app {

struct PlotOptions {
  int width = 640;
  int height = 360;
  /// Half-width of the t window for line tables; chosen from the breakpoints
  /// when absent.
  std::optional<double> window;
  std::string title;
};

/// Step or sample plot of an SSF table as a standalone SVG document.
std::string render_svg(const SsfTable& table, const PlotOptions& opt = {});

}  // namespace ssf::app
