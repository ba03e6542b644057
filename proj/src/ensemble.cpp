#include "manetsim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace manet {

namespace {

// Purpose tags keep the substreams of different pipeline stages disjoint.
constexpr std::uint64_t kPurposeSweep = 0x5357454550ULL;    // "SWEEP"
constexpr std::uint64_t kPurposeMetrics = 0x4d4554524943ULL;  // "METRIC"

void parallel_for(std::int64_t n, int workers,
                  const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<std::int64_t>(workers, n));
  pool.reserve(count - 1);
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

std::int64_t largest_component(const Configuration& config) {
  if (config.node_count() == 0) return 0;
  return components_burning(config).largest;
}

}  // namespace

int ExperimentPlan::worker_count() const {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ExperimentPlan::validate() const {
  if (z_list.empty()) throw std::invalid_argument("plan: z_list is empty");
  for (int z : z_list) {
    if (z < 1) throw std::invalid_argument("plan: z must be >= 1");
    if (L < 2 * z + 1) {
      throw std::invalid_argument("plan: need L >= 2z+1, got L=" +
                                  std::to_string(L) +
                                  " z=" + std::to_string(z));
    }
  }
  if (sigma_grid.empty()) throw std::invalid_argument("plan: sigma_grid is empty");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (sigma_grid[i] <= 0.0 || sigma_grid[i] > 1.0) {
      throw std::invalid_argument("plan: sigma values must lie in (0, 1]");
    }
    if (i > 0 && sigma_grid[i] <= sigma_grid[i - 1]) {
      throw std::invalid_argument("plan: sigma_grid must be strictly increasing");
    }
  }
  if (realizations < 1) throw std::invalid_argument("plan: realizations must be >= 1");
  if (mode == Mode::trajectory && trajectory_stride < 1) {
    throw std::invalid_argument("plan: trajectory_stride must be >= 1");
  }
}

void CurvePointAccum::add_sample(std::int64_t largest) {
  const std::int64_t x = (n0 <= 1) ? sample_denom : largest;
  largest_sum += x;
  largest_sq_sum += x * x;
  ++count;
}

CurvePoint CurvePointAccum::finalize() const {
  CurvePoint p;
  p.sigma = sigma;
  p.realizations = count;
  if (count == 0) return p;
  const auto d = static_cast<double>(sample_denom);
  const auto R = static_cast<double>(count);
  const double sum = static_cast<double>(largest_sum);
  p.eta_mean = sum / (R * d);
  if (count > 1) {
    // Sample variance from exact integer sums.
    const double ssq = static_cast<double>(largest_sq_sum);
    double var = (ssq - sum * sum / R) / (R - 1.0) / (d * d);
    if (var < 0.0) var = 0.0;  // roundoff guard
    p.eta_stderr = std::sqrt(var / R);
  }
  return p;
}

ConnectivityCurve CurveAccum::finalize() const {
  ConnectivityCurve curve;
  curve.z = z;
  curve.L = L;
  curve.points.reserve(points.size());
  for (const auto& pt : points) curve.points.push_back(pt.finalize());
  return curve;
}

CurveAccum merge(const CurveAccum& a, const CurveAccum& b) {
  if (a.points.empty() && a.z == 0) return b;
  if (b.points.empty() && b.z == 0) return a;
  if (a.z != b.z || a.L != b.L || a.points.size() != b.points.size()) {
    throw std::invalid_argument("merge: curve fragments disagree on (z, L, grid)");
  }
  CurveAccum out = a;
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    auto& p = out.points[i];
    const auto& q = b.points[i];
    if (p.sigma != q.sigma || p.n0 != q.n0) {
      throw std::invalid_argument("merge: curve fragments disagree on sigma grid");
    }
    p.largest_sum += q.largest_sum;
    p.largest_sq_sum += q.largest_sq_sum;
    p.count += q.count;
  }
  return out;
}

MetricsTable merge(const MetricsTable& a, const MetricsTable& b) {
  if (a.L != b.L || a.z != b.z || a.sigma != b.sigma ||
      a.epsilon != b.epsilon || a.eta_threshold != b.eta_threshold) {
    throw std::invalid_argument("merge: metrics tables disagree on parameters");
  }
  MetricsTable out = a;
  out.accepted += b.accepted;
  out.attempts += b.attempts;
  out.node_samples += b.node_samples;
  for (std::size_t k = 0; k < out.degree_count.size(); ++k) {
    out.degree_count[k] += b.degree_count[k];
    out.triangle_sum[k] += b.triangle_sum[k];
    out.neighbor_degree_sum[k] += b.neighbor_degree_sum[k];
  }
  return out;
}

CurveAccum merge(const std::vector<CurveAccum>& partials) {
  if (partials.empty()) throw std::invalid_argument("merge: no partials");
  CurveAccum out = partials.front();
  for (std::size_t i = 1; i < partials.size(); ++i) out = merge(out, partials[i]);
  return out;
}

MetricsTable merge(const std::vector<MetricsTable>& partials) {
  if (partials.empty()) throw std::invalid_argument("merge: no partials");
  MetricsTable out = partials.front();
  for (std::size_t i = 1; i < partials.size(); ++i) out = merge(out, partials[i]);
  return out;
}

namespace {

Configuration realize_independent(const ExperimentPlan& plan, int z,
                                  int sigma_index,
                                  std::int64_t realization_index) {
  const LatticeConfig cfg(plan.L, z);
  RngStream rng = RngStream(plan.seed).derive(
      {kPurposeSweep, static_cast<std::uint64_t>(z),
       static_cast<std::uint64_t>(sigma_index),
       static_cast<std::uint64_t>(realization_index)});
  Configuration config =
      random_placement(cfg, plan.sigma_grid[sigma_index], rng);
  for (int w = 0; w < plan.warmup(); ++w) step(config, rng);
  return config;
}

}  // namespace

Configuration realized_configuration(const ExperimentPlan& plan, int z,
                                     int sigma_index, int realization_index) {
  plan.validate();
  return realize_independent(plan, z, sigma_index, realization_index);
}

CurveAccum run_connectivity_block(const ExperimentPlan& plan, int z,
                                  std::int64_t realization_begin,
                                  std::int64_t realization_end) {
  plan.validate();
  const LatticeConfig probe(plan.L, z);

  CurveAccum accum;
  accum.z = z;
  accum.L = plan.L;
  accum.points.resize(plan.sigma_grid.size());
  for (std::size_t si = 0; si < plan.sigma_grid.size(); ++si) {
    auto& pt = accum.points[si];
    pt.sigma = plan.sigma_grid[si];
    pt.n0 = node_count_for(pt.sigma, probe);
    pt.sample_denom = std::max<std::int64_t>(pt.n0, 1);
  }

  const std::int64_t block = realization_end - realization_begin;
  if (block <= 0) return accum;

  if (plan.mode == ExperimentPlan::Mode::trajectory) {
    // One long walk per (z, sigma); snapshots every stride.  Inherently
    // sequential within a point.
    for (std::size_t si = 0; si < plan.sigma_grid.size(); ++si) {
      const LatticeConfig cfg(plan.L, z);
      RngStream rng = RngStream(plan.seed).derive(
          {kPurposeSweep, static_cast<std::uint64_t>(z),
           static_cast<std::uint64_t>(si)});
      Configuration config = random_placement(cfg, plan.sigma_grid[si], rng);
      for (int w = 0; w < plan.warmup(); ++w) step(config, rng);
      for (std::int64_t rep = 0; rep < realization_end; ++rep) {
        if (rep >= realization_begin) {
          accum.points[si].add_sample(largest_component(config));
        }
        if (rep + 1 < realization_end) {
          for (int s = 0; s < plan.trajectory_stride; ++s) step(config, rng);
        }
      }
    }
    return accum;
  }

  // Independent mode: realizations are the unit of parallelism.  Results
  // land in per-realization slots and are reduced sequentially, so worker
  // scheduling cannot perturb the outcome.
  std::vector<std::int64_t> slots(
      static_cast<std::size_t>(block) * plan.sigma_grid.size());
  parallel_for(static_cast<std::int64_t>(plan.sigma_grid.size()) * block,
               plan.worker_count(), [&](std::int64_t task) {
                 const auto si = static_cast<int>(task / block);
                 const std::int64_t rep = realization_begin + task % block;
                 const Configuration config =
                     realize_independent(plan, z, si, rep);
                 slots[static_cast<std::size_t>(task)] =
                     largest_component(config);
               });
  for (std::size_t si = 0; si < plan.sigma_grid.size(); ++si) {
    for (std::int64_t r = 0; r < block; ++r) {
      accum.points[si].add_sample(slots[si * block + r]);
    }
  }
  return accum;
}

std::vector<ConnectivityCurve> run_connectivity_sweep(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<ConnectivityCurve> curves;
  curves.reserve(plan.z_list.size());
  for (int z : plan.z_list) {
    curves.push_back(
        run_connectivity_block(plan, z, 0, plan.realizations).finalize());
  }
  return curves;
}

MetricsTable run_metrics(const ExperimentPlan& plan, double sigma, int z,
                         double eta_threshold, double epsilon) {
  plan.validate();
  if (eta_threshold < 0.0 || eta_threshold > 1.0) {
    throw std::invalid_argument("run_metrics: eta_threshold must be in [0, 1]");
  }
  const LatticeConfig cfg(plan.L, z);
  const std::int64_t quota = plan.realizations;
  const std::int64_t cap = 100 * quota;

  MetricsTable table(plan.L, z, sigma, epsilon, eta_threshold);

  const auto run_attempt = [&](std::int64_t attempt, MetricsTable& out,
                               bool& accepted) {
    RngStream rng = RngStream(plan.seed).derive(
        {kPurposeMetrics, static_cast<std::uint64_t>(z),
         std::bit_cast<std::uint64_t>(sigma),
         static_cast<std::uint64_t>(attempt)});
    Configuration config = random_placement(cfg, sigma, rng);
    for (int w = 0; w < plan.warmup(); ++w) step(config, rng);
    accepted = connectivity_sample(config) >= eta_threshold;
    if (accepted) out.accumulate(config);
  };

  // Attempts are examined in index order; a wave is evaluated in parallel
  // and folded sequentially, so the accepted set is exactly the first
  // `quota` accepting attempt indices no matter the worker count.
  const int workers = plan.worker_count();
  const std::int64_t wave = std::max<std::int64_t>(8L * workers, 16);
  std::int64_t examined = 0;
  std::int64_t taken = 0;
  for (std::int64_t base = 0; base < cap && taken < quota; base += wave) {
    const std::int64_t hi = std::min(cap, base + wave);
    const std::int64_t width = hi - base;
    std::vector<MetricsTable> partial(
        static_cast<std::size_t>(width),
        MetricsTable(plan.L, z, sigma, epsilon, eta_threshold));
    std::vector<std::uint8_t> ok(static_cast<std::size_t>(width), 0);
    parallel_for(width, workers, [&](std::int64_t i) {
      bool accepted = false;
      run_attempt(base + i, partial[static_cast<std::size_t>(i)], accepted);
      ok[static_cast<std::size_t>(i)] = accepted ? 1 : 0;
    });
    for (std::int64_t i = 0; i < width && taken < quota; ++i) {
      examined = base + i + 1;
      if (!ok[static_cast<std::size_t>(i)]) continue;
      table = merge(table, partial[static_cast<std::size_t>(i)]);
      ++taken;
    }
  }
  table.attempts = examined;

  if (taken < quota) {
    char msg[196];
    std::snprintf(msg, sizeof msg,
                  "run_metrics infeasible: z=%d sigma=%.6g threshold=%.6g: "
                  "%lld of %lld attempts accepted (acceptance rate %.4g, "
                  "cap %lldx)",
                  z, sigma, eta_threshold, static_cast<long long>(taken),
                  static_cast<long long>(examined),
                  table.acceptance_rate(), 100LL);
    throw std::runtime_error(msg);
  }
  return table;
}

}  // namespace manet
