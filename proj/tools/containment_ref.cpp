// containment-ref: validate, simulate and report on containment scenarios.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "containment/cli.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = containment::cli;

  CLI::App app{"Distributed containment reference generator: validate, run, margins, sweep"};
  app.require_subcommand(1);

  cli::Options opts;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool parallel = false;
  std::string mu_sweep;
  std::string parameter;
  std::string values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opts.config, "Scenario JSON file")->required();
    sub->add_option("--seed", seed, "Seed for default initial states");
  };

  auto* validate = app.add_subcommand("validate", "Check graph, formation and gain conditions");
  add_common(validate);

  auto* run = app.add_subcommand("run", "Simulate and write trajectories.csv, diagnostics.csv, verdict.json");
  add_common(run);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--tol", opts.tol, "Convergence tolerance on |xi|");
  run->add_option("--containment-tol", opts.containment_tol, "Tolerance for the final hull test");
  run->add_flag("--override-validation", opts.override_validation, "Simulate even if validation fails");
  run->add_flag("--parallel", parallel, "Evaluate agents with OpenMP");

  auto* margins = app.add_subcommand("margins", "Print hull margins and hull vertices as JSON");
  add_common(margins);
  margins->add_option("--mu-sweep", mu_sweep, "Comma separated mu values");

  auto* sweep = app.add_subcommand("sweep", "Run one scenario per parameter value, CSV to stdout");
  add_common(sweep);
  sweep->add_option("--param", parameter, "g3, g4, mu or dt")->required();
  sweep->add_option("--values", values, "Comma separated values")->required();
  sweep->add_option("--out", out_dir, "Also write sweep.csv here");
  sweep->add_option("--tol", opts.tol, "Convergence tolerance on |xi|");
  sweep->add_flag("--override-validation", opts.override_validation, "Simulate even if validation fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (!app.get_subcommands().front()->get_option("--seed")->empty()) opts.seed = seed;
  if (parallel) opts.exec = containment::Execution::Parallel;

  try {
    if (validate->parsed()) return cli::cmd_validate(opts, std::cout, std::cerr);
    if (run->parsed()) return cli::cmd_run(opts, std::cout, std::cerr);
    if (margins->parsed()) {
      return cli::cmd_margins(opts, mu_sweep.empty() ? std::vector<double>{} : parse_list(mu_sweep), std::cout,
                              std::cerr);
    }
    if (sweep->parsed()) return cli::cmd_sweep(opts, parameter, parse_list(values), std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed number list: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
