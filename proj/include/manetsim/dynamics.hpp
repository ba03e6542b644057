#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "manetsim/lattice.hpp"
#include "manetsim/rng.hpp"

namespace manet {

constexpr std::int32_t kEmptySite = -1;

/// Snapshot of node positions with O(1) occupancy lookup.
///
/// Invariants: every site holds at most one node ("occupied by only one
/// node or nothing"), and positions[] and site_to_node[] stay mutually
/// consistent through every move.
class Configuration {
 public:
  Configuration() = default;
  Configuration(LatticeConfig cfg, std::vector<SiteCoord> positions);

  const LatticeConfig& lattice() const { return cfg_; }
  std::int64_t node_count() const {
    return static_cast<std::int64_t>(positions_.size());
  }
  const std::vector<SiteCoord>& positions() const { return positions_; }
  SiteCoord position(std::int32_t node) const { return positions_[node]; }

  /// Node id at a site, or kEmptySite.
  std::int32_t occupant(SiteCoord site) const {
    return site_to_node_[cfg_.site_index(site)];
  }
  std::int32_t occupant_at_index(std::int32_t site_index) const {
    return site_to_node_[site_index];
  }
  bool occupied(SiteCoord site) const { return occupant(site) != kEmptySite; }

  /// Moves a node, keeping both views consistent.  The target must be
  /// empty; enforced by assert in debug builds.
  void move_node(std::int32_t node, SiteCoord target);

  /// Checks the exclusion invariant exhaustively (test support).
  bool consistent() const;

 private:
  LatticeConfig cfg_;
  std::vector<SiteCoord> positions_;
  std::vector<std::int32_t> site_to_node_;
};

/// Deterministic node count for a given occupancy: round(sigma * N) with
/// round-half-to-even, so runs are reproducible for any real sigma.
std::int64_t node_count_for(double sigma, const LatticeConfig& cfg);

/// Place round(sigma * N) nodes on distinct sites chosen uniformly at
/// random without replacement.
Configuration random_placement(const LatticeConfig& cfg, double sigma,
                               RngStream& rng);

/// One sweep of the exclusion walk: every node, visited once in a freshly
/// shuffled order, draws one of the six unit directions uniformly and
/// moves iff the target site is empty.  Blocked nodes stay put.
void step(Configuration& config, RngStream& rng);

/// n0 / N.
double occupancy(const Configuration& config);

/// Plain-text site list ("q r" per line) with an L / z / seed header,
/// for debugging and replay.
void write_site_list(std::ostream& out, const Configuration& config,
                     std::uint64_t seed);
Configuration read_site_list(std::istream& in);

}  // namespace manet
