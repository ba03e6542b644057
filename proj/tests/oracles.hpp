#pragma once

// Independent oracles for cross-checking the implementation.  Everything
// here is deliberately brute force and shares no code path with the
// library internals it checks.

#include <map>
#include <vector>

#include "manetsim/connectivity.hpp"
#include "manetsim/dynamics.hpp"
#include "manetsim/ensemble.hpp"

namespace manet::oracle {

/// Graph distance by breadth-first search over the six unit moves on the
/// wrapped lattice.
int bfs_distance(SiteCoord a, SiteCoord b, const LatticeConfig& cfg);

/// Offsets with hex distance <= z found by scanning the full [-2z, 2z]^2
/// square with BFS distances on a lattice large enough to avoid wrapping.
std::vector<SiteOffset> enumerate_ball(int z);

/// Component sizes (descending) via transitive closure of the pairwise
/// hex-distance adjacency matrix, O(n0^3).
std::vector<std::int64_t> closure_components(const Configuration& config);

/// Largest component size from the closure oracle.
std::int64_t closure_largest(const Configuration& config);

/// Per-node degree by the O(n0^2) pairwise loop.
std::vector<int> pairwise_degrees(const Configuration& config);

/// Per-node triangle count by the explicit neighbor-pair loop.
std::vector<std::int64_t> pairwise_triangles(const Configuration& config);

/// knn(k) by direct double-loop evaluation.
std::map<int, double> pairwise_knn(const Configuration& config);

/// C(k) from the pairwise oracles.
std::map<int, double> pairwise_clustering(const Configuration& config);

/// Synthetic logistic curve eta(sigma) = eta0 / (eta0 + (1-eta0) e^{-g s}).
ConnectivityCurve synthetic_logistic(int z, double eta0, double g,
                                     double sigma_lo, double sigma_hi,
                                     int points);

/// Exactly-collapsing synthetic family: every curve satisfies
/// eta = f(R^beta (ln sigma - ln sigma0)) for a fixed sigmoid f.
std::vector<ConnectivityCurve> synthetic_collapse_family(
    double beta, double sigma0, const std::vector<int>& z_list, int points);

}  // namespace manet::oracle
