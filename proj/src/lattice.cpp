#include "manetsim/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace manet {

LatticeConfig::LatticeConfig(int side, int range) : L(side), z(range) {
  if (L < 1) throw std::invalid_argument("lattice side L must be positive");
  if (z < 1) throw std::invalid_argument("transmission range z must be >= 1");
  if (L < 2 * z + 1) {
    throw std::invalid_argument("lattice too small: need L >= 2z+1, got L=" +
                                std::to_string(L) + " z=" + std::to_string(z));
  }
}

SiteCoord wrap(int q, int r, const LatticeConfig& cfg) {
  const int L = cfg.L;
  q %= L;
  if (q < 0) q += L;
  r %= L;
  if (r < 0) r += L;
  return {q, r};
}

int hex_norm(int dq, int dr) {
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

int hex_distance(SiteCoord a, SiteCoord b, const LatticeConfig& cfg) {
  const int L = cfg.L;
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  // Component-wise modular folding is wrong for the hex metric near the
  // "corners" of the fundamental domain; minimizing over the nine images
  // is exact.
  int best = hex_norm(dq, dr);
  for (int iq = -1; iq <= 1; ++iq) {
    for (int ir = -1; ir <= 1; ++ir) {
      if (iq == 0 && ir == 0) continue;
      best = std::min(best, hex_norm(dq + iq * L, dr + ir * L));
    }
  }
  return best;
}

NeighborhoodTable neighborhood_offsets(int z) {
  if (z < 1) {
    throw std::invalid_argument(
        "neighborhood_offsets: z must be >= 1, got " + std::to_string(z));
  }
  NeighborhoodTable table;
  table.z = z;
  table.offsets.reserve(static_cast<std::size_t>(neighborhood_size(z)));
  for (int d = 1; d <= z; ++d) {
    for (int dq = -d; dq <= d; ++dq) {
      for (int dr = -d; dr <= d; ++dr) {
        if (hex_norm(dq, dr) == d) table.offsets.push_back({dq, dr});
      }
    }
  }
  return table;
}

}  // namespace manet
