#pragma once

#include <cstdint>
#include <vector>

namespace manet {

/// Axial coordinate of a site on the periodic triangular lattice,
/// always stored wrapped into [0, L) x [0, L).
struct SiteCoord {
  int q = 0;
  int r = 0;

  friend bool operator==(const SiteCoord&, const SiteCoord&) = default;
};

/// Lattice side L (N = L^2 sites) and transmission range z in lattice
/// units (r = z * r0).
struct LatticeConfig {
  int L = 0;
  int z = 1;

  LatticeConfig() = default;
  LatticeConfig(int side, int range);

  std::int64_t site_count() const { return static_cast<std::int64_t>(L) * L; }

  /// Flat site index, row-major over (q, r).
  std::int32_t site_index(SiteCoord c) const { return c.q * L + c.r; }
  SiteCoord site_at(std::int32_t index) const {
    return {static_cast<int>(index / L), static_cast<int>(index % L)};
  }
};

/// Relative offset between two sites, not wrapped.
struct SiteOffset {
  int dq = 0;
  int dr = 0;

  friend bool operator==(const SiteOffset&, const SiteOffset&) = default;
};

/// All offsets at hex distance 1..z from the origin, in a fixed order
/// (distance, then dq, then dr).  Contains exactly 3z(z+1) entries, no
/// zero offset, and is closed under negation.
struct NeighborhoodTable {
  int z = 0;
  std::vector<SiteOffset> offsets;

  std::size_t size() const { return offsets.size(); }
};

/// Wrap a raw coordinate pair into canonical [0, L) form.  Idempotent.
SiteCoord wrap(int q, int r, const LatticeConfig& cfg);

/// Hex distance between the origin and an unwrapped offset:
/// (|dq| + |dr| + |dq + dr|) / 2.
int hex_norm(int dq, int dr);

/// Graph distance between two canonical sites on the periodic lattice.
/// The closed-form axial metric is minimized over the nine periodic
/// images, which is exact for any L and z with L >= 2z + 1.
int hex_distance(SiteCoord a, SiteCoord b, const LatticeConfig& cfg);

/// Build the range-z neighbor stencil.  Throws std::invalid_argument for
/// z < 1 (a node with no range cannot communicate).
NeighborhoodTable neighborhood_offsets(int z);

/// Number of sites at hex distance in [1, z]: 3z(z+1).
constexpr std::int64_t neighborhood_size(int z) {
  return static_cast<std::int64_t>(3) * z * (z + 1);
}

}  // namespace manet
