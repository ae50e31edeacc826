// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "respkern/response.hpp"

namespace respkern {

/// Flat key=value configuration with dotted sections ('#' starts a comment).
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

struct RunConfig {
  std::string analysis;  // kernel, power-identity, propagate, verify-hydrogen,
                         // verify-nodal, gs-uniqueness
  ModelSpec model;
  std::optional<std::vector<double>> psi0;  // over the degenerate columns
  std::optional<double> psi0_sz;
  std::string operator_selector = "density";  // density, rdm_full, spin, custom
  std::vector<std::string> operator_paths;
  std::vector<double> s_samples = {0.5, 1.0, 2.0};
  double epsilon = 1e-3;
  double horizon = 10.0;
  int n_random = 20;
  Profile profile;
  std::optional<RealVector> weights;
  double tol_nullspace = 1e-8;
  std::string out_path = "report.json";
  unsigned seed = 12345;
};

/// Builds a RunConfig from a parsed file; `analysis` comes from the CLI
/// subcommand and must agree with an optional analysis.type key.
RunConfig make_run_config(const ConfigMap& cfg, const std::string& analysis);

struct Check {
  std::string name;
  double value = 0;
  double expected = 0;
  double tol = 0;
  bool pass = false;
};

struct KernelEntry {
  RealVector coeffs;
  std::string label;
  std::optional<double> l_eigenvalue;
  double residual_f0 = 0;
  double residual_comm = 0;
};

struct Report {
  int schema = 1;
  std::string analysis;
  std::string model_summary;
  std::vector<KernelEntry> kernel;
  double method_agreement_angle = 0;
  std::vector<Check> checks;
  double elapsed_seconds = 0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

void write_report_json(const Report& report, const std::string& path);
Report read_report_json(const std::string& path);

struct KnownOperator {
  std::string label;
  OneBodyMatrix u;
};

/// Re-expresses the kernel basis over recognizable operators: known
/// operators contained in the kernel span become labeled basis vectors, the
/// orthogonal remainder is emitted as "unidentified" (never dropped).
/// Matching uses the Frobenius metric of the underlying one-body matrices
/// when available, coefficient directions otherwise.
std::vector<KernelEntry> label_kernel_vectors(
    const ResponseKernelResult& kernel, const OperatorSet& set,
    const std::vector<KnownOperator>& known, const GroundStateSolution& gs,
    const KernelOptions& opts = {});

/// Operator set selected by the config (density, rdm_full, spin, custom).
OperatorSet build_operator_set(const Model& model, const RunConfig& cfg);

/// Executes the configured analysis. Returns 0 on success, 2 when any check
/// fails its tolerance; throws respkern::Error on hard errors. When `out`
/// is non-null the report is also returned there.
int run_analysis(const RunConfig& cfg, Report* out = nullptr);

}  // namespace respkern
