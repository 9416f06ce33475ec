#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace {

int do_validate(const std::string& path) {
  try {
    torus_lab::cli::Config cfg = torus_lab::cli::Config::from_file(path);
    torus_lab::cli::validate_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  }
  std::cout << "valid\n";
  return 0;
}

int do_run(const std::string& path) {
  torus_lab::cli::Config cfg;
  try {
    cfg = torus_lab::cli::Config::from_file(path);
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  }
  torus_lab::cli::RunOutcome out = torus_lab::cli::run_experiment(cfg);
  if (out.exit_code != 0) {
    std::cerr << out.message << "\n";
    return out.exit_code;
  }
  if (cfg.has("output")) {
    const std::string dest = cfg.raw("output");
    std::ofstream f(dest);
    if (!f) {
      std::cerr << "cannot write output file '" << dest << "'\n";
      return 1;
    }
    f << out.csv;
    std::cerr << out.message << " -> " << dest << "\n";
  } else {
    std::cout << out.csv;
    std::cerr << out.message << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torus-lab: numerical experiments on band-limited functions"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", run_path, "config file")->required();

  std::string validate_path;
  auto* validate =
      app.add_subcommand("validate", "schema-check an experiment config");
  validate->add_option("config", validate_path, "config file")->required();

  bool fast = false;
  auto* acceptance =
      app.add_subcommand("acceptance", "run the acceptance battery");
  acceptance->add_flag("--fast", fast, "skip the slow criteria");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return do_run(run_path);
  if (validate->parsed()) return do_validate(validate_path);
  return torus_lab::cli::run_acceptance(fast, std::cout);
}
