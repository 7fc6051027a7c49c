#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ssf/app/report.hpp"
#include "ssf/app/scenario.hpp"

namespace ssf::app {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  double tolerance_scale = 1.0;
};

/// Executes every check implied by the scenario kind. Numeric library errors
/// are captured in Report::error; schema errors propagate.
Report run_scenario(const Scenario& sc, double tolerance_scale = 1.0);

/// Loads, runs and writes <name>.report.json and the requested extra outputs.
/// Returns 0 when every record passes, 1 on a numeric failure, 2 on a schema
/// or I/O error.
int run_file(const std::filesystem::path& path, const RunOptions& opt, std::string* message = nullptr);

/// Runs scenarios concurrently (one worker each) and returns the largest exit
/// code.
int run_batch(const std::vector<std::filesystem::path>& paths, const RunOptions& opt, unsigned workers);

}  // namespace ssf::app
