#include "manetsim/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "manetsim/analysis.hpp"
#include "manetsim/report.hpp"

namespace manet {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kCodeVersion = "manetsim 1.0.0";

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& outputs,
                    double wall_seconds) {
  json m;
  m["command"] = command;
  m["config"] = cfg.to_json();
  m["config_hash"] = cfg.config_hash();
  m["seed"] = cfg.seed;
  m["code_version"] = kCodeVersion;
  m["wall_time_s"] = wall_seconds;
  m["outputs"] = outputs;
  write_text_file(join_path(cfg.output_dir, "manifest_" + command + ".json"),
                  m.dump(2) + "\n");
}

std::vector<double> grid_for(const RunConfig& cfg, int z) {
  if (!cfg.sigma_grid.empty()) return cfg.sigma_grid;
  return auto_sigma_grid(cfg.L, z, cfg.seed, cfg.warmup_steps, cfg.threads,
                         cfg.auto_grid);
}

std::vector<ConnectivityCurve> run_sweep_curves(const RunConfig& cfg,
                                                std::ostream& log) {
  std::vector<ConnectivityCurve> curves;
  for (int z : cfg.z_list) {
    const auto grid = grid_for(cfg, z);
    log << "sweep: z=" << z << " grid " << grid.size() << " points ["
        << grid.front() << ", " << grid.back() << "] x " << cfg.realizations
        << " realizations\n";
    const ExperimentPlan plan = cfg.plan_for(z, grid);
    curves.push_back(
        run_connectivity_block(plan, z, 0, plan.realizations).finalize());
  }
  return curves;
}

struct FitSet {
  std::map<int, LogisticFit> fits;
  std::map<int, std::string> errors;
};

FitSet fit_all(const std::vector<ConnectivityCurve>& curves,
               const RunConfig& cfg) {
  FitSet out;
  for (const auto& curve : curves) {
    try {
      out.fits[curve.z] =
          fit_logistic(curve, {cfg.fit_eta_min, cfg.fit_eta_max});
    } catch (const std::exception& e) {
      out.errors[curve.z] = e.what();
    }
  }
  return out;
}

json fit_report_json(const FitSet& fits, const CollapseResult* collapse) {
  json report;
  json per_z = json::object();
  std::vector<std::pair<int, double>> g_by_z;
  for (const auto& [z, fit] : fits.fits) {
    const SigmaCritical sc = estimate_sigma_c(fit);
    const MixingCheck mix = homogeneous_mixing_check(fit);
    per_z[std::to_string(z)] = {
        {"eta0", fit.eta0},
        {"g", fit.g},
        {"rss", fit.rss},
        {"reduced_chisq", fit.reduced_chisq},
        {"weighted", fit.weighted},
        {"points_used", fit.points_used},
        {"sigma_c_mid", sc.sigma_mid},
        {"sigma_c_99", sc.sigma_99},
        {"mixing_ratio_spread", mix.spread},
    };
    g_by_z.emplace_back(z, fit.g);
  }
  for (const auto& [z, err] : fits.errors) {
    per_z[std::to_string(z)] = {{"error", err}};
  }
  report["fits"] = per_z;
  if (g_by_z.size() >= 2) {
    const Proportionality prop = proportional_fit(g_by_z);
    report["g_proportionality"] = {{"coefficient", prop.coefficient},
                                   {"max_rel_dev", prop.max_rel_dev}};
  } else {
    report["g_proportionality"] = nullptr;
  }
  if (collapse) {
    report["beta"] = {{"beta", collapse->beta},
                      {"residual", collapse->residual},
                      {"anchor_sigma0", collapse->anchor_sigma0},
                      {"reference_z", collapse->reference_z}};
  } else {
    report["beta"] = nullptr;
  }
  return report;
}

// Emits curves.csv + fit_report.json + plot script; returns written names.
std::vector<std::string> emit_sweep_outputs(
    const RunConfig& cfg, const std::vector<ConnectivityCurve>& curves,
    const FitSet& fits, const CollapseResult* collapse) {
  const std::string hash = cfg.config_hash();
  std::vector<std::string> outputs;

  {
    std::ostringstream csv;
    write_curves_csv(csv, curves, &fits.fits, hash, cfg.seed);
    write_text_file(join_path(cfg.output_dir, "curves.csv"), csv.str());
    outputs.push_back("curves.csv");
  }
  write_text_file(join_path(cfg.output_dir, "fit_report.json"),
                  fit_report_json(fits, collapse).dump(2) + "\n");
  outputs.push_back("fit_report.json");
  write_text_file(join_path(cfg.output_dir, "curves.gp"),
                  gnuplot_curves_script("curves.csv", cfg.z_list));
  outputs.push_back("curves.gp");
  return outputs;
}

// The collapse and metrics commands always consume the serialized curves,
// so their outputs do not depend on whether curves.csv already existed.
std::vector<ConnectivityCurve> load_or_run_curves(const RunConfig& cfg,
                                                  std::ostream& log,
                                                  std::vector<std::string>* outputs) {
  const std::string path = join_path(cfg.output_dir, "curves.csv");
  if (!fs::exists(path)) {
    log << "curves.csv absent; running the sweep first\n";
    const auto curves = run_sweep_curves(cfg, log);
    const FitSet fits = fit_all(curves, cfg);
    auto written = emit_sweep_outputs(cfg, curves, fits, nullptr);
    if (outputs) outputs->insert(outputs->end(), written.begin(), written.end());
  }
  std::ifstream in(path);
  return read_curves_csv(in);
}

std::string sigma_slug(double sigma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", sigma);
  std::string s(buf);
  for (auto& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  fs::create_directories(cfg.output_dir);
  const double t0 = now_seconds();

  const auto curves = run_sweep_curves(cfg, log);
  const FitSet fits = fit_all(curves, cfg);
  for (const auto& [z, fit] : fits.fits) {
    const SigmaCritical sc = estimate_sigma_c(fit);
    log << "fit: z=" << z << " eta0=" << fit.eta0 << " g=" << fit.g
        << " sigma_c_mid=" << sc.sigma_mid << " sigma_c_99=" << sc.sigma_99
        << "\n";
  }
  for (const auto& [z, err] : fits.errors) {
    log << "fit: z=" << z << " failed: " << err << "\n";
  }

  const auto outputs = emit_sweep_outputs(cfg, curves, fits, nullptr);
  write_manifest(cfg, "sweep", outputs, now_seconds() - t0);
  return 0;
}

int cmd_collapse(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  fs::create_directories(cfg.output_dir);
  const double t0 = now_seconds();
  std::vector<std::string> outputs;

  const auto curves = load_or_run_curves(cfg, log, &outputs);

  CollapseOptions opt;
  opt.beta_min = cfg.beta_min;
  opt.beta_max = cfg.beta_max;
  opt.fit_anchor = cfg.collapse_fit_anchor;
  const CollapseResult collapse = find_beta(curves, opt);
  log << "collapse: beta=" << collapse.beta
      << " residual=" << collapse.residual
      << " anchor_sigma0=" << collapse.anchor_sigma0 << "\n";

  const FitSet fits = fit_all(curves, cfg);
  const std::string hash = cfg.config_hash();
  {
    std::ostringstream csv;
    write_collapse_csv(csv, curves, collapse, hash, cfg.seed);
    write_text_file(join_path(cfg.output_dir, "collapse.csv"), csv.str());
    outputs.push_back("collapse.csv");
  }
  {
    std::ostringstream csv;
    write_collapse_profile_csv(csv, collapse, hash, cfg.seed);
    write_text_file(join_path(cfg.output_dir, "collapse_profile.csv"), csv.str());
    outputs.push_back("collapse_profile.csv");
  }
  write_text_file(join_path(cfg.output_dir, "fit_report.json"),
                  fit_report_json(fits, &collapse).dump(2) + "\n");
  outputs.push_back("fit_report.json");
  std::vector<int> zs;
  for (const auto& c : curves) zs.push_back(c.z);
  write_text_file(join_path(cfg.output_dir, "collapse.gp"),
                  gnuplot_collapse_script("collapse.csv", zs));
  outputs.push_back("collapse.gp");

  write_manifest(cfg, "collapse", outputs, now_seconds() - t0);
  return 0;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.metrics_targets.empty() && !cfg.kc_sweep.enabled) {
    throw std::invalid_argument(
        "metrics: no metrics_targets and no kc_sweep configured");
  }
  fs::create_directories(cfg.output_dir);
  const double t0 = now_seconds();
  std::vector<std::string> outputs;

  // Fitted midpoints, needed by any "auto" target.
  std::map<int, double> sigma_mid;
  bool need_auto = false;
  for (const auto& t : cfg.metrics_targets) {
    if (t.sigma < 0.0) need_auto = true;
  }
  std::vector<ConnectivityCurve> curves;
  if (need_auto) {
    curves = load_or_run_curves(cfg, log, &outputs);
    const FitSet fits = fit_all(curves, cfg);
    for (const auto& [z, fit] : fits.fits) {
      sigma_mid[z] = estimate_sigma_c(fit).sigma_mid;
    }
    for (const auto& [z, err] : fits.errors) {
      log << "metrics: fit for z=" << z << " failed: " << err << "\n";
    }
  }

  const std::string hash = cfg.config_hash();
  json report;
  report["targets"] = json::array();
  std::vector<std::string> metric_csvs;

  for (const auto& target : cfg.metrics_targets) {
    double sigma = target.sigma;
    if (sigma < 0.0) {
      const auto it = sigma_mid.find(target.z);
      if (it == sigma_mid.end()) {
        throw std::runtime_error(
            "metrics: auto sigma requested but no fit available for z=" +
            std::to_string(target.z));
      }
      sigma = cfg.sigma_auto_factor * it->second;
    }
    log << "metrics: z=" << target.z << " sigma=" << sigma << " threshold="
        << cfg.eta_threshold << "\n";
    const ExperimentPlan plan = cfg.plan_for(target.z, {sigma});
    const MetricsTable table =
        run_metrics(plan, sigma, target.z, cfg.eta_threshold, cfg.epsilon);

    const std::string name = "metrics_z" + std::to_string(target.z) + "_s" +
                             sigma_slug(sigma) + ".csv";
    {
      std::ostringstream csv;
      write_metrics_csv(csv, table, hash, cfg.seed);
      write_text_file(join_path(cfg.output_dir, name), csv.str());
      outputs.push_back(name);
      metric_csvs.push_back(name);
    }

    json entry;
    entry["z"] = target.z;
    entry["sigma"] = sigma;
    entry["accepted"] = table.accepted;
    entry["attempts"] = table.attempts;
    entry["acceptance_rate"] = table.acceptance_rate();
    entry["mean_degree"] = table.mean_degree();
    entry["mean_degree_law"] =
        3.0 * target.z * (target.z + 1) * sigma;
    entry["k_c"] = table.cutoff_degree();

    // Plateau of C(k) over 4 <= k <= k_c, count-weighted.
    const auto ck = table.clustering_by_degree();
    const int kc = table.cutoff_degree();
    double wsum = 0.0, csum = 0.0;
    for (const auto& [k, c] : ck) {
      if (k < 4 || k > kc) continue;
      const double w = static_cast<double>(table.degree_count[k]);
      wsum += w;
      csum += w * c;
    }
    if (wsum > 0.0) {
      const double plateau = csum / wsum;
      double max_dev = 0.0;
      for (const auto& [k, c] : ck) {
        if (k < 4 || k > kc) continue;
        max_dev = std::max(max_dev, std::abs(c - plateau));
      }
      entry["clustering_plateau"] = plateau;
      entry["clustering_max_dev"] = max_dev;
    }
    try {
      const KnnLinearity lin = check_knn_linearity(table);
      entry["knn_fit"] = {{"intercept", lin.intercept},
                          {"slope", lin.slope},
                          {"r_squared", lin.r_squared},
                          {"k_min", lin.k_used_min},
                          {"k_max", lin.k_used_max}};
    } catch (const std::exception& e) {
      entry["knn_fit"] = {{"error", e.what()}};
    }
    report["targets"].push_back(entry);
  }

  if (cfg.kc_sweep.enabled) {
    std::vector<KcSweepRow> rows;
    for (double sigma : cfg.kc_sweep.sigma_grid) {
      const ExperimentPlan plan = cfg.plan_for(cfg.kc_sweep.z, {sigma});
      const MetricsTable table = run_metrics(
          plan, sigma, cfg.kc_sweep.z, cfg.kc_sweep.eta_threshold, cfg.epsilon);
      rows.push_back({sigma, table.cutoff_degree(), table.mean_degree(),
                      table.accepted, table.attempts});
      log << "kc_sweep: z=" << cfg.kc_sweep.z << " sigma=" << sigma
          << " k_c=" << rows.back().k_c << "\n";
    }
    const std::string name =
        "kc_sweep_z" + std::to_string(cfg.kc_sweep.z) + ".csv";
    std::ostringstream csv;
    write_kc_sweep_csv(csv, cfg.kc_sweep.z, rows, hash, cfg.seed);
    write_text_file(join_path(cfg.output_dir, name), csv.str());
    outputs.push_back(name);
  }

  write_text_file(join_path(cfg.output_dir, "metrics_report.json"),
                  report.dump(2) + "\n");
  outputs.push_back("metrics_report.json");
  if (!metric_csvs.empty()) {
    write_text_file(join_path(cfg.output_dir, "metrics.gp"),
                    gnuplot_metrics_script(metric_csvs));
    outputs.push_back("metrics.gp");
  }

  write_manifest(cfg, "metrics", outputs, now_seconds() - t0);
  return 0;
}

int cmd_replay(const std::string& manifest_path, int threads,
               std::ostream& log) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw std::invalid_argument("cannot open manifest '" + manifest_path + "'");
  }
  json m;
  in >> m;
  const std::string command = m.at("command").get<std::string>();
  RunConfig cfg;
  cfg.apply_json(m.at("config"), "");
  cfg.threads = threads;
  log << "replay: command=" << command << " output_dir=" << cfg.output_dir
      << "\n";
  if (command == "sweep") return cmd_sweep(cfg, log);
  if (command == "collapse") return cmd_collapse(cfg, log);
  if (command == "metrics") return cmd_metrics(cfg, log);
  throw std::invalid_argument("manifest names unknown command '" + command + "'");
}

}  // namespace manet
