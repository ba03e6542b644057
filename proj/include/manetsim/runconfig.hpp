#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "manetsim/ensemble.hpp"
#include "manetsim/sigma_grid.hpp"

namespace manet {

/// One (z, sigma) operating point for network metrics; sigma < 0 means
/// "auto": sigma_auto_factor times the fitted logistic midpoint.
struct MetricsTarget {
  int z = 2;
  double sigma = -1.0;
};

/// Cutoff-degree sweep (k_c versus sigma at fixed z).  Runs unfiltered by
/// default so the sweep can reach below the connectivity transition.
struct KcSweepConfig {
  bool enabled = false;
  int z = 4;
  std::vector<double> sigma_grid;
  double eta_threshold = 0.0;
};

/// Fully resolved command configuration.  Precedence: flags > config file
/// > preset defaults.  Unknown keys in a config file are rejected.
struct RunConfig {
  int L = 100;
  std::vector<int> z_list = {2, 3, 4, 5, 6};
  std::vector<double> sigma_grid;  // empty: auto per z
  AutoGridOptions auto_grid;
  int realizations = 100;
  int warmup_steps = -1;
  std::uint64_t seed = 1;
  std::string mode = "independent";
  int trajectory_stride = 1;
  double eta_threshold = 0.9995;
  double epsilon = 1e-3;
  double fit_eta_min = 0.1;
  double fit_eta_max = 0.95;
  double beta_min = -1.5;
  double beta_max = 0.0;
  bool collapse_fit_anchor = true;
  double sigma_auto_factor = 1.10;
  std::vector<MetricsTarget> metrics_targets;
  KcSweepConfig kc_sweep;
  std::string output_dir = "out";

  /// Execution-only; not part of the config schema or hash.
  int threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
  std::string config_hash() const;
  ExperimentPlan plan_for(int z, std::vector<double> grid) const;

  /// Built-in presets: desk, paper-fig2, paper-fig3, paper-fig4,
  /// paper-fig5, paper-fig6.
  static RunConfig preset(const std::string& name);

  /// Overlays `data` onto *this.  `source_text`, when given, is used to
  /// report line numbers for unknown or ill-typed keys.
  void apply_json(const nlohmann::json& data, const std::string& source_text);
};

/// Parses a config file with line-numbered error messages.
RunConfig load_config_file(const std::string& path, const RunConfig& base);

}  // namespace manet
