// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlsbist/commands.hpp"
#include "mlsbist/scenario.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario config file (JSON)");
  cmd->add_option("--out", opts.out_dir, "Output directory for CSV files");
  cmd->add_option("--override", opts.overrides, "KEY=VALUE config override (repeatable)");
  cmd->add_option("--seed", opts.seed, "Override run.seed");
}

mlsbist::config::ScenarioConfig load(const CommonOptions& opts) {
  nlohmann::json doc;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + opts.config_path);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("config parse error in " + opts.config_path + ": " + e.what());
    }
  } else {
    doc = nlohmann::json::object();
  }
  for (const auto& o : opts.overrides) mlsbist::config::apply_override(doc, o);
  if (opts.seed >= 0) doc["run"]["seed"] = opts.seed;
  return mlsbist::config::parse_config(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online sensor self-test simulator: MLS-encoded stimulus superposition"};
  app.require_subcommand(1);

  CommonOptions selftest_opts, figure_opts, mc_opts, sweep_opts;
  std::string figure_name;
  int trials = 20;

  auto* selftest = app.add_subcommand("selftest", "Run the covariance/correlation self-test");
  add_common(selftest, selftest_opts);

  auto* figure = app.add_subcommand("figure", "Emit CSV data for a figure analog");
  figure->add_option("name", figure_name, "One of fig2, fig4, fig5, fig6, fig7")->required();
  add_common(figure, figure_opts);

  auto* montecarlo = app.add_subcommand("montecarlo", "Random perturbation sweep");
  montecarlo->add_option("--trials", trials, "Number of Monte-Carlo trials");
  add_common(montecarlo, mc_opts);

  auto* sweep = app.add_subcommand("sweep", "Rejection curve of the configured code");
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mlsbist::cli::kExitUsageError;
  }

  try {
    if (selftest->parsed()) {
      return mlsbist::cli::cmd_selftest(load(selftest_opts), selftest_opts.out_dir);
    }
    if (figure->parsed()) {
      return mlsbist::cli::cmd_figure(figure_name, load(figure_opts), figure_opts.out_dir);
    }
    if (montecarlo->parsed()) {
      return mlsbist::cli::cmd_montecarlo(load(mc_opts), trials, mc_opts.out_dir);
    }
    if (sweep->parsed()) {
      return mlsbist::cli::cmd_sweep(load(sweep_opts), sweep_opts.out_dir);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mlsbist::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mlsbist::cli::kExitConfigError;
  }
  return mlsbist::cli::kExitUsageError;
}
