#include "manetsim/sigma_grid.hpp"

#include <algorithm>
#include <cmath>

#include "manetsim/ensemble.hpp"

namespace manet {

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> grid;
  if (count <= 1 || lo >= hi) {
    grid.push_back(lo);
    return grid;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  grid.reserve(count);
  for (int i = 0; i < count; ++i) {
    grid.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> auto_sigma_grid(int L, int z, std::uint64_t seed,
                                    int warmup_steps, int threads,
                                    const AutoGridOptions& opt) {
  ExperimentPlan coarse;
  coarse.L = L;
  coarse.z_list = {z};
  coarse.sigma_grid = log_spaced(opt.coarse_lo, opt.coarse_hi, opt.coarse_points);
  coarse.realizations = opt.coarse_realizations;
  coarse.warmup_steps = warmup_steps;
  coarse.threads = threads;
  // Scan seed kept disjoint from the sweep streams.
  coarse.seed = seed ^ 0xC0A857E5CAULL;

  const ConnectivityCurve scan =
      run_connectivity_block(coarse, z, 0, coarse.realizations).finalize();

  // First eta >= 0.5 crossing, interpolated in (ln sigma, eta).
  double sigma_star = opt.coarse_hi;
  bool crossed = false;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (scan.points[i].eta_mean >= 0.5) {
      if (i == 0) {
        sigma_star = scan.points[0].sigma;
      } else {
        const auto& a = scan.points[i - 1];
        const auto& b = scan.points[i];
        const double t = (0.5 - a.eta_mean) / (b.eta_mean - a.eta_mean);
        sigma_star =
            std::exp(std::log(a.sigma) +
                     t * (std::log(b.sigma) - std::log(a.sigma)));
      }
      crossed = true;
      break;
    }
  }
  if (!crossed) sigma_star = opt.coarse_hi;

  const double lo = std::max(sigma_star / opt.span_factor, 1e-4);
  const double hi = std::min(sigma_star * opt.span_factor, 1.0);
  const int count = std::max(
      2, static_cast<int>(std::ceil(opt.points_per_decade *
                                    std::log10(hi / lo))) + 1);
  return log_spaced(lo, hi, count);
}

}  // namespace manet
