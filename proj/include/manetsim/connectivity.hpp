#pragma once

#include <cstdint>
#include <vector>

#include "manetsim/dynamics.hpp"

namespace manet {

/// Connected-component sizes of the range-z communication graph.
struct ComponentReport {
  std::vector<std::int64_t> sizes;  // descending
  std::int64_t largest = 0;
  std::int64_t n0 = 0;
  /// Occupancy lookups performed; at most n0 * 3z(z+1) by construction.
  std::int64_t neighbor_probes = 0;
};

/// Breadth-first burning over the precomputed stencil.  The configuration
/// is frozen during the sweep: combustion is instantaneous relative to
/// node motion.
ComponentReport components_burning(const Configuration& config);

/// Independent cross-check via union-find (path compression + union by
/// size).  Produces the identical size multiset on every input.
ComponentReport components_unionfind(const Configuration& config);

/// largest / n0, with the convention that an empty or singleton network
/// is vacuously connected (returns 1).
double connectivity_sample(const Configuration& config);

/// Same convention applied to a precomputed report.
double connectivity_sample(const ComponentReport& report);

}  // namespace manet
