#include <string>

#include <CLI11.hpp>

#include "qprop/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact coherent-state propagators of a two-level system coupled "
               "to oscillator or spin baths"};
  app.require_subcommand(1);

  std::string config;
  qprop::cli::RunOptions opts;
  double tol = 0.0;

  auto* run = app.add_subcommand("run", "execute one JSON config file");
  run->add_option("config", config, "path to the config file")->required();
  auto* tol_opt = run->add_option("--tol", tol, "override the config tolerance");
  run->add_option("--out", opts.out_dir, "output directory (default: cwd)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qprop::cli::kExitParse;
  }

  if (tol_opt->count() > 0) opts.tol_override = tol;
  return qprop::cli::run_config(config, opts);
}
