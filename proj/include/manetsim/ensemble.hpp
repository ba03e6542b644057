#pragma once

#include <cstdint>
#include <vector>

#include "manetsim/connectivity.hpp"
#include "manetsim/dynamics.hpp"
#include "manetsim/netmetrics.hpp"
#include "manetsim/rng.hpp"

namespace manet {

/// Sweep protocol: which (z, sigma) points to sample and how.
struct ExperimentPlan {
  int L = 100;
  std::vector<int> z_list;
  std::vector<double> sigma_grid;  // strictly increasing, in (0, 1]
  int realizations = 300;
  int warmup_steps = -1;  // -1: default W = L
  std::uint64_t seed = 1;

  enum class Mode { independent, trajectory };
  /// independent: every realization is a fresh placement plus warm-up.
  /// trajectory: one long walk per (z, sigma); snapshots every stride.
  Mode mode = Mode::independent;
  int trajectory_stride = 1;

  int threads = 0;  // 0: hardware concurrency

  int warmup() const { return warmup_steps < 0 ? L : warmup_steps; }
  int worker_count() const;

  /// Throws std::invalid_argument before any work if the plan is invalid
  /// (empty grid, non-increasing grid, L < 2z+1, ...).
  void validate() const;
};

/// One measured eta(sigma) point.
struct CurvePoint {
  double sigma = 0.0;
  double eta_mean = 0.0;
  double eta_stderr = 0.0;
  std::int64_t realizations = 0;
};

/// eta(sigma) samples for one transmission range.
struct ConnectivityCurve {
  int z = 0;
  int L = 0;
  std::vector<CurvePoint> points;
};

/// Exact per-point tallies behind a curve: integer sums of the largest
/// component size, so aggregation over realizations is associative,
/// commutative, and independent of worker count.
struct CurvePointAccum {
  double sigma = 0.0;
  std::int64_t n0 = 0;
  std::int64_t sample_denom = 1;    // max(n0, 1)
  std::int64_t largest_sum = 0;     // sum of per-realization samples
  std::int64_t largest_sq_sum = 0;  // and of their squares
  std::int64_t count = 0;

  void add_sample(std::int64_t largest);
  CurvePoint finalize() const;
};

struct CurveAccum {
  int z = 0;
  int L = 0;
  std::vector<CurvePointAccum> points;

  ConnectivityCurve finalize() const;
};

/// Count-weighted pooling of partial results; mismatched parameters raise
/// a merge-conflict error (std::invalid_argument).
CurveAccum merge(const CurveAccum& a, const CurveAccum& b);
MetricsTable merge(const MetricsTable& a, const MetricsTable& b);
CurveAccum merge(const std::vector<CurveAccum>& partials);
MetricsTable merge(const std::vector<MetricsTable>& partials);

/// The post-warm-up configuration of one realization of the plan, exactly
/// as run_connectivity_sweep would see it (shared RNG substreams).
Configuration realized_configuration(const ExperimentPlan& plan, int z,
                                     int sigma_index, int realization_index);

/// Ensemble eta(sigma) for every z in the plan.  Deterministic for a fixed
/// seed regardless of worker count.
std::vector<ConnectivityCurve> run_connectivity_sweep(const ExperimentPlan& plan);

/// Exact-accumulator variant, for block-merge equivalence and tooling.
/// Realizations [realization_begin, realization_end) of the same plan.
CurveAccum run_connectivity_block(const ExperimentPlan& plan, int z,
                                  std::int64_t realization_begin,
                                  std::int64_t realization_end);

/// Pools network metrics over `plan.realizations` accepted configurations
/// (connectivity sample >= eta_threshold).  Attempts are examined in index
/// order; configurations below threshold are skipped and resampled, with a
/// cap of 100x the requested count.  Exceeding the cap raises an
/// infeasibility error naming the acceptance rate.
MetricsTable run_metrics(const ExperimentPlan& plan, double sigma, int z,
                         double eta_threshold, double epsilon = 1e-3);

}  // namespace manet
