// Command-line front end: run experiment configs, plot result CSVs.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cyclic/errors.hpp"
#include "cyclic/runner/config.hpp"
#include "cyclic/runner/experiments.hpp"
#include "cyclic/runner/results.hpp"
#include "cyclic/runner/svg.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw cyc::runner::config_error("cannot read '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclicity and model-space experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out-dir", out_dir, "directory for CSV and summary output");
  run->add_option("--seed", seed, "override the config seed");

  std::string csv_path;
  std::string kind;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "render a result CSV as SVG");
  plot->add_option("csv", csv_path, "result CSV")->required();
  plot->add_option("--kind", kind, "envelope | bn | alpha | growth")->required();
  plot->add_option("-o,--output", svg_path, "SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = cyc::runner::load_config_text(slurp(config_path));
      if (seed) cfg.set("seed", std::to_string(*seed));
      const auto out = cyc::runner::run_and_write(cfg, out_dir);
      std::cout << "csv=" << out.csv.string() << "\n";
      std::cout << "summary=" << out.summary.string() << "\n";
      std::cout << "all-pass=" << (out.all_pass ? "true" : "false") << "\n";
      return out.exit_code;
    }
    const auto table = cyc::runner::read_csv(csv_path);
    cyc::runner::write_file_atomic(svg_path, cyc::runner::render_plot(table, kind));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
