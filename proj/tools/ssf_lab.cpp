#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ssf/app/csv.hpp"
#include "ssf/app/generate.hpp"
#include "ssf/app/runner.hpp"
#include "ssf/app/svg.hpp"
#include "ssf/error.hpp"
#include "ssf/parallel.hpp"
#include "ssf/simd/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral shift function laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SSF_LAB_VERSION);

  unsigned threads = 0;
  double tolerance_scale = 1.0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("--tolerance-scale", tolerance_scale, "Multiplier applied to every check tolerance")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run scenario files and write reports");
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  run->add_option("files", inputs, "Scenario JSON files")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Directory for reports, tables and plots");

  auto* gen = app.add_subcommand("generate", "Write a seeded random scenario");
  std::string kind;
  std::uint64_t seed = 0;
  int dim = 4;
  std::string gen_out;
  gen->add_option("--kind", kind, "Scenario kind")->required()->check(CLI::IsMember(ssf::app::kind_names()));
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--dim", dim, "Matrix dimension (grid factor for potentials)")->check(CLI::Range(1, 512));
  gen->add_option("-o,--output", gen_out, "Output file (stdout when absent)");

  auto* plot = app.add_subcommand("plot", "Render an SSF table as SVG");
  std::string table_path, svg_path;
  std::optional<double> window;
  std::string title;
  plot->add_option("table", table_path, "SSF CSV table")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--output", svg_path, "SVG output")->required();
  plot->add_option("--window", window, "Half-width of the t window for line tables")->check(CLI::PositiveNumber);
  plot->add_option("--title", title, "Plot title");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) ssf::set_thread_count(threads);

  try {
    if (*run) {
      ssf::app::RunOptions opt;
      opt.out_dir = out_dir;
      opt.tolerance_scale = tolerance_scale;
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      return ssf::app::run_batch(paths, opt, ssf::thread_count());
    }
    if (*gen) {
      const auto k = ssf::app::parse_kind(kind);
      const std::string text = ssf::app::generate_scenario(*k, seed, dim).dump(2) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        ssf::app::write_text(gen_out, text);
      }
      return 0;
    }
    if (*plot) {
      const ssf::app::SsfTable table = ssf::app::from_csv(ssf::app::read_text(table_path));
      ssf::app::PlotOptions po;
      po.window = window;
      po.title = title;
      ssf::app::write_text(svg_path, ssf::app::render_svg(table, po));
      return 0;
    }
  } catch (const ssf::Error& e) {
    std::cerr << "ssf-lab: " << e.what() << "\n";
    return e.kind() == ssf::ErrorKind::SchemaError || e.kind() == ssf::ErrorKind::IoError ? 2 : 1;
  }
  return 0;
}
