#pragma once

#include <filesystem>
#include <string>

#include "ssf/app/report.hpp"
#include "ssf/circle.hpp"
#include "ssf/line.hpp"

namespace ssf::app {

/// 17 significant digits; infinities as inf / -inf.
std::string format_number(double v);
double parse_number(std::string_view s);

SsfTable step_table(const StepSSF& ssf);      // theta_start,theta_end,value
SsfTable sampled_table(const SampledSSF& ssf);  // theta,xi
SsfTable line_table(const LineSSF& ssf);      // t_start,t_end,value

std::string to_csv(const SsfTable& table);
SsfTable from_csv(std::string_view text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace ssf::app
