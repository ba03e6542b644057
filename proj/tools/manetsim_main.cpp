#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "manetsim/commands.hpp"

namespace {

struct CommonFlags {
  std::optional<std::string> preset;
  std::optional<std::string> config_file;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> L;
  std::optional<int> realizations;
  std::vector<int> z_list;
  std::optional<int> warmup;
  std::optional<double> sigma_auto_factor;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--preset", flags.preset,
                  "Built-in preset: desk, paper-fig2..paper-fig6 (default desk)");
  cmd->add_option("--config", flags.config_file, "JSON config file");
  cmd->add_option("--out", flags.output_dir, "Output directory");
  cmd->add_option("--seed", flags.seed, "Master seed");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
  cmd->add_option("--L", flags.L, "Lattice side");
  cmd->add_option("--realizations", flags.realizations, "Realizations per point");
  cmd->add_option("--z", flags.z_list, "Transmission ranges (repeatable)");
  cmd->add_option("--warmup", flags.warmup, "Warm-up steps (-1 = L)");
  cmd->add_option("--sigma-auto-factor", flags.sigma_auto_factor,
                  "Auto metrics operating point: factor * fitted sigma_c");
}

// Precedence: flags > config file > preset defaults.  The environment
// variable MANETSIM_THREADS supplies only the default thread count.
manet::RunConfig resolve_config(const CommonFlags& flags) {
  manet::RunConfig cfg = manet::RunConfig::preset(flags.preset.value_or("desk"));
  if (flags.config_file) cfg = manet::load_config_file(*flags.config_file, cfg);

  if (flags.output_dir) cfg.output_dir = *flags.output_dir;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.L) cfg.L = *flags.L;
  if (flags.realizations) cfg.realizations = *flags.realizations;
  if (!flags.z_list.empty()) cfg.z_list = flags.z_list;
  if (flags.warmup) cfg.warmup_steps = *flags.warmup;
  if (flags.sigma_auto_factor) cfg.sigma_auto_factor = *flags.sigma_auto_factor;

  if (flags.threads) {
    cfg.threads = *flags.threads;
  } else if (const char* env = std::getenv("MANETSIM_THREADS")) {
    cfg.threads = std::atoi(env);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"manetsim: connectivity of mobile nodes on a periodic "
               "triangular lattice"};
  app.require_subcommand(1);

  CommonFlags sweep_flags, collapse_flags, metrics_flags;
  auto* sweep = app.add_subcommand(
      "sweep", "Measure eta(sigma) curves and fit the logistic law");
  add_common(sweep, sweep_flags);
  auto* collapse = app.add_subcommand(
      "collapse", "Scaling collapse of the curves onto the z=2 reference");
  add_common(collapse, collapse_flags);
  auto* metrics = app.add_subcommand(
      "metrics", "Degree distribution, clustering and k_nn near sigma_c");
  add_common(metrics, metrics_flags);

  std::string manifest_path;
  std::optional<int> replay_threads;
  auto* replay = app.add_subcommand(
      "replay", "Re-derive outputs from a saved run manifest");
  replay->add_option("manifest", manifest_path, "manifest_*.json path")
      ->required();
  replay->add_option("--threads", replay_threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      return manet::cmd_sweep(resolve_config(sweep_flags), std::cout);
    }
    if (collapse->parsed()) {
      return manet::cmd_collapse(resolve_config(collapse_flags), std::cout);
    }
    if (metrics->parsed()) {
      return manet::cmd_metrics(resolve_config(metrics_flags), std::cout);
    }
    if (replay->parsed()) {
      int threads = replay_threads.value_or(0);
      if (!replay_threads) {
        if (const char* env = std::getenv("MANETSIM_THREADS")) {
          threads = std::atoi(env);
        }
      }
      return manet::cmd_replay(manifest_path, threads, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
