// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "respkern/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"respkern: response-function kernel analysis for small "
               "fermionic systems"};
  app.require_subcommand(1);

  const std::vector<std::string> analyses = {
      "kernel",          "power-identity", "propagate",
      "verify-hydrogen", "verify-nodal",   "gs-uniqueness"};
  std::string config_path;
  std::string out_path;
  unsigned seed = 0;
  bool have_seed = false;

  for (const auto& name : analyses) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--out", out_path, "report JSON path");
    sub->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
      have_seed = true;
    });
  }

  CLI11_PARSE(app, argc, argv);
  const std::string analysis = app.get_subcommands().front()->get_name();

  try {
    respkern::ConfigMap cfg;
    if (!config_path.empty()) cfg = respkern::parse_config_file(config_path);
    respkern::RunConfig rc = respkern::make_run_config(cfg, analysis);
    if (!out_path.empty()) rc.out_path = out_path;
    if (have_seed) rc.seed = seed;
    respkern::Report report;
    int code = respkern::run_analysis(rc, &report);
    for (const auto& check : report.checks)
      std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
                << "  value=" << check.value << "\n";
    std::cout << "report: " << rc.out_path << "\n";
    return code;
  } catch (const respkern::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
