#pragma once

#include <cstdint>
#include <vector>

namespace manet {

/// Auto-location of the sweep grid: a coarse log-spaced scan brackets the
/// transition, then the window around it is filled with a fixed density of
/// log-spaced points.  The transition is sharp, so uniform grids would
/// waste most of their samples.
struct AutoGridOptions {
  int coarse_points = 8;
  double coarse_lo = 0.01;
  double coarse_hi = 0.9;
  int coarse_realizations = 24;
  double points_per_decade = 40.0;
  double span_factor = 2.5;  // window [sigma*/f, sigma**f], clipped to (0, 1]
};

/// Log-spaced grid of `count` points over [lo, hi], both included.
std::vector<double> log_spaced(double lo, double hi, int count);

/// Deterministic auto grid for one (L, z).  The coarse scan uses its own
/// derived seed, so it does not consume draws from the main sweep streams.
std::vector<double> auto_sigma_grid(int L, int z, std::uint64_t seed,
                                    int warmup_steps, int threads,
                                    const AutoGridOptions& opt = {});

}  // namespace manet
