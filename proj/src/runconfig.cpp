#include "manetsim/runconfig.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "manetsim/report.hpp"

namespace manet {

namespace {

int line_of(const std::string& text, const std::string& needle) {
  const auto pos = text.find('"' + needle + '"');
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

[[noreturn]] void config_error(const std::string& text, const std::string& key,
                               const std::string& what) {
  std::ostringstream msg;
  msg << "config error";
  if (const int line = line_of(text, key); line > 0) msg << " (line " << line << ")";
  msg << ": key '" << key << "': " << what;
  throw std::invalid_argument(msg.str());
}

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& known,
                    const std::string& text, const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      config_error(text, key,
                   "unknown key" + (scope.empty() ? "" : " in " + scope));
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (L < 3) throw std::invalid_argument("config: L must be >= 3");
  if (z_list.empty()) throw std::invalid_argument("config: z_list is empty");
  for (int z : z_list) {
    if (z < 1 || L < 2 * z + 1) {
      throw std::invalid_argument("config: every z needs 1 <= z <= (L-1)/2");
    }
  }
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (sigma_grid[i] <= 0.0 || sigma_grid[i] > 1.0) {
      throw std::invalid_argument("config: sigma values must lie in (0, 1]");
    }
    if (i > 0 && sigma_grid[i] <= sigma_grid[i - 1]) {
      throw std::invalid_argument("config: sigma_grid must be strictly increasing");
    }
  }
  if (realizations < 1) throw std::invalid_argument("config: realizations >= 1");
  if (mode != "independent" && mode != "trajectory") {
    throw std::invalid_argument("config: mode must be independent or trajectory");
  }
  if (eta_threshold < 0.0 || eta_threshold > 1.0) {
    throw std::invalid_argument("config: eta_threshold must be in [0, 1]");
  }
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("config: epsilon must be in (0, 1)");
  }
  if (!(fit_eta_min < fit_eta_max)) {
    throw std::invalid_argument("config: fit window must satisfy min < max");
  }
  if (!(beta_min < beta_max + 1e-12)) {
    throw std::invalid_argument("config: beta_min must be <= beta_max");
  }
  if (sigma_auto_factor < 1.0 || sigma_auto_factor > 1.2) {
    throw std::invalid_argument(
        "config: sigma_auto_factor must lie in [1.0, 1.2]");
  }
  for (const auto& t : metrics_targets) {
    if (std::find(z_list.begin(), z_list.end(), t.z) == z_list.end()) {
      throw std::invalid_argument("config: metrics target z not in z_list");
    }
    if (t.sigma > 1.0 || (t.sigma >= 0.0 && t.sigma == 0.0)) {
      throw std::invalid_argument("config: metrics target sigma must be in (0, 1]");
    }
  }
  if (kc_sweep.enabled) {
    if (kc_sweep.sigma_grid.empty()) {
      throw std::invalid_argument("config: kc_sweep.sigma_grid is empty");
    }
    if (kc_sweep.z < 1 || L < 2 * kc_sweep.z + 1) {
      throw std::invalid_argument("config: kc_sweep.z incompatible with L");
    }
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["z_list"] = z_list;
  j["sigma_grid"] = sigma_grid;
  j["auto_grid"] = {{"coarse_points", auto_grid.coarse_points},
                    {"coarse_lo", auto_grid.coarse_lo},
                    {"coarse_hi", auto_grid.coarse_hi},
                    {"coarse_realizations", auto_grid.coarse_realizations},
                    {"points_per_decade", auto_grid.points_per_decade},
                    {"span_factor", auto_grid.span_factor}};
  j["realizations"] = realizations;
  j["warmup_steps"] = warmup_steps;
  j["seed"] = seed;
  j["mode"] = mode;
  j["trajectory_stride"] = trajectory_stride;
  j["eta_threshold"] = eta_threshold;
  j["epsilon"] = epsilon;
  j["fit_eta_min"] = fit_eta_min;
  j["fit_eta_max"] = fit_eta_max;
  j["beta_min"] = beta_min;
  j["beta_max"] = beta_max;
  j["collapse_fit_anchor"] = collapse_fit_anchor;
  j["sigma_auto_factor"] = sigma_auto_factor;
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : metrics_targets) {
    nlohmann::json entry;
    entry["z"] = t.z;
    if (t.sigma >= 0.0) entry["sigma"] = t.sigma;
    targets.push_back(entry);
  }
  j["metrics_targets"] = targets;
  if (kc_sweep.enabled) {
    j["kc_sweep"] = {{"z", kc_sweep.z},
                     {"sigma_grid", kc_sweep.sigma_grid},
                     {"eta_threshold", kc_sweep.eta_threshold}};
  }
  j["output_dir"] = output_dir;
  return j;
}

std::string RunConfig::config_hash() const {
  return to_hex(fnv1a(to_json().dump()));
}

ExperimentPlan RunConfig::plan_for(int z, std::vector<double> grid) const {
  ExperimentPlan plan;
  plan.L = L;
  plan.z_list = {z};
  plan.sigma_grid = std::move(grid);
  plan.realizations = realizations;
  plan.warmup_steps = warmup_steps;
  plan.seed = seed;
  plan.mode = (mode == "trajectory") ? ExperimentPlan::Mode::trajectory
                                     : ExperimentPlan::Mode::independent;
  plan.trajectory_stride = trajectory_stride;
  plan.threads = threads;
  return plan;
}

RunConfig RunConfig::preset(const std::string& name) {
  RunConfig cfg;
  cfg.seed = 20081107;
  if (name == "desk") {
    cfg.L = 100;
    cfg.realizations = 100;
    cfg.metrics_targets = {{2, -1.0}, {4, -1.0}};
    cfg.kc_sweep.enabled = true;
    cfg.kc_sweep.z = 4;
    cfg.kc_sweep.sigma_grid = {0.08, 0.10, 0.13, 0.16, 0.20, 0.25, 0.30};
    return cfg;
  }
  if (name == "paper-fig2" || name == "paper-fig3") {
    cfg.L = 200;
    cfg.realizations = 300;
    return cfg;
  }
  if (name == "paper-fig4" || name == "paper-fig5" || name == "paper-fig6") {
    cfg.L = 200;
    cfg.realizations = 300;
    cfg.metrics_targets = {{2, -1.0}, {3, -1.0}, {4, -1.0}, {5, -1.0}, {6, -1.0}};
    if (name == "paper-fig4") {
      cfg.kc_sweep.enabled = true;
      cfg.kc_sweep.z = 4;
      cfg.kc_sweep.sigma_grid = {0.08, 0.10, 0.13, 0.16, 0.20, 0.25, 0.30};
    }
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

void RunConfig::apply_json(const nlohmann::json& data,
                           const std::string& text) {
  if (!data.is_object()) {
    throw std::invalid_argument("config error: top level must be a JSON object");
  }
  static const std::set<std::string> known = {
      "L", "z_list", "sigma_grid", "auto_grid", "realizations",
      "warmup_steps", "seed", "mode", "trajectory_stride", "eta_threshold",
      "epsilon", "fit_eta_min", "fit_eta_max", "beta_min", "beta_max",
      "collapse_fit_anchor", "sigma_auto_factor", "metrics_targets",
      "kc_sweep", "output_dir"};
  reject_unknown(data, known, text, "");

  try {
    if (data.contains("L")) L = data["L"].get<int>();
    if (data.contains("z_list")) z_list = data["z_list"].get<std::vector<int>>();
    if (data.contains("sigma_grid")) {
      sigma_grid = data["sigma_grid"].get<std::vector<double>>();
    }
    if (data.contains("auto_grid")) {
      const auto& ag = data["auto_grid"];
      reject_unknown(ag,
                     {"coarse_points", "coarse_lo", "coarse_hi",
                      "coarse_realizations", "points_per_decade", "span_factor"},
                     text, "auto_grid");
      if (ag.contains("coarse_points")) auto_grid.coarse_points = ag["coarse_points"].get<int>();
      if (ag.contains("coarse_lo")) auto_grid.coarse_lo = ag["coarse_lo"].get<double>();
      if (ag.contains("coarse_hi")) auto_grid.coarse_hi = ag["coarse_hi"].get<double>();
      if (ag.contains("coarse_realizations")) {
        auto_grid.coarse_realizations = ag["coarse_realizations"].get<int>();
      }
      if (ag.contains("points_per_decade")) {
        auto_grid.points_per_decade = ag["points_per_decade"].get<double>();
      }
      if (ag.contains("span_factor")) auto_grid.span_factor = ag["span_factor"].get<double>();
    }
    if (data.contains("realizations")) realizations = data["realizations"].get<int>();
    if (data.contains("warmup_steps")) warmup_steps = data["warmup_steps"].get<int>();
    if (data.contains("seed")) seed = data["seed"].get<std::uint64_t>();
    if (data.contains("mode")) mode = data["mode"].get<std::string>();
    if (data.contains("trajectory_stride")) {
      trajectory_stride = data["trajectory_stride"].get<int>();
    }
    if (data.contains("eta_threshold")) eta_threshold = data["eta_threshold"].get<double>();
    if (data.contains("epsilon")) epsilon = data["epsilon"].get<double>();
    if (data.contains("fit_eta_min")) fit_eta_min = data["fit_eta_min"].get<double>();
    if (data.contains("fit_eta_max")) fit_eta_max = data["fit_eta_max"].get<double>();
    if (data.contains("beta_min")) beta_min = data["beta_min"].get<double>();
    if (data.contains("beta_max")) beta_max = data["beta_max"].get<double>();
    if (data.contains("collapse_fit_anchor")) {
      collapse_fit_anchor = data["collapse_fit_anchor"].get<bool>();
    }
    if (data.contains("sigma_auto_factor")) {
      sigma_auto_factor = data["sigma_auto_factor"].get<double>();
    }
    if (data.contains("metrics_targets")) {
      metrics_targets.clear();
      for (const auto& entry : data["metrics_targets"]) {
        reject_unknown(entry, {"z", "sigma"}, text, "metrics_targets");
        MetricsTarget t;
        t.z = entry.at("z").get<int>();
        if (entry.contains("sigma")) t.sigma = entry["sigma"].get<double>();
        metrics_targets.push_back(t);
      }
    }
    if (data.contains("kc_sweep")) {
      const auto& ks = data["kc_sweep"];
      reject_unknown(ks, {"z", "sigma_grid", "eta_threshold"}, text, "kc_sweep");
      kc_sweep.enabled = true;
      if (ks.contains("z")) kc_sweep.z = ks["z"].get<int>();
      if (ks.contains("sigma_grid")) {
        kc_sweep.sigma_grid = ks["sigma_grid"].get<std::vector<double>>();
      }
      if (ks.contains("eta_threshold")) {
        kc_sweep.eta_threshold = ks["eta_threshold"].get<double>();
      }
    }
    if (data.contains("output_dir")) output_dir = data["output_dir"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config error: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  nlohmann::json data;
  try {
    data = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = 1 + static_cast<int>(std::count(
                             text.begin(),
                             text.begin() + std::min<std::size_t>(e.byte, text.size()),
                             '\n'));
    throw std::invalid_argument("config error (line " + std::to_string(line) +
                                "): " + e.what());
  }
  RunConfig cfg = base;
  cfg.apply_json(data, text);
  return cfg;
}

}  // namespace manet
