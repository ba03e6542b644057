#include "manetsim/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace manet {

namespace {

// Site indices of the stencil applied at `site`, wrapped.  Writing into a
// caller-provided scratch keeps the inner loops allocation-free.
inline std::int32_t wrapped_neighbor(const LatticeConfig& cfg, SiteCoord p,
                                     SiteOffset o) {
  int q = p.q + o.dq;
  if (q >= cfg.L) q -= cfg.L;
  if (q < 0) q += cfg.L;
  int r = p.r + o.dr;
  if (r >= cfg.L) r -= cfg.L;
  if (r < 0) r += cfg.L;
  return q * cfg.L + r;
}

}  // namespace

ComponentReport components_burning(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const LatticeConfig& cfg = config.lattice();
  const NeighborhoodTable stencil = neighborhood_offsets(cfg.z);

  ComponentReport report;
  report.n0 = n0;
  if (n0 == 0) return report;

  std::vector<std::uint8_t> burned(n0, 0);
  std::vector<std::int32_t> frontier;
  frontier.reserve(n0);

  for (std::int32_t seed = 0; seed < n0; ++seed) {
    if (burned[seed]) continue;
    burned[seed] = 1;
    frontier.clear();
    frontier.push_back(seed);
    std::int64_t size = 0;
    // FIFO front index; each node's stencil is probed exactly once, when
    // the node burns.
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const std::int32_t node = frontier[head];
      ++size;
      const SiteCoord p = config.position(node);
      for (const SiteOffset& o : stencil.offsets) {
        ++report.neighbor_probes;
        const std::int32_t other =
            config.occupant_at_index(wrapped_neighbor(cfg, p, o));
        if (other != kEmptySite && !burned[other]) {
          burned[other] = 1;
          frontier.push_back(other);
        }
      }
    }
    report.sizes.push_back(size);
  }

  std::sort(report.sizes.begin(), report.sizes.end(), std::greater<>());
  report.largest = report.sizes.front();
  return report;
}

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::int32_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];  // path halving
      x = parent_[x];
    }
    return x;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::int64_t size_of(std::int32_t root) { return size_[root]; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int64_t> size_;
};

}  // namespace

ComponentReport components_unionfind(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const LatticeConfig& cfg = config.lattice();
  const NeighborhoodTable stencil = neighborhood_offsets(cfg.z);

  ComponentReport report;
  report.n0 = n0;
  if (n0 == 0) return report;

  DisjointSet dsu(n0);
  for (std::int32_t node = 0; node < n0; ++node) {
    const SiteCoord p = config.position(node);
    for (const SiteOffset& o : stencil.offsets) {
      ++report.neighbor_probes;
      const std::int32_t other =
          config.occupant_at_index(wrapped_neighbor(cfg, p, o));
      if (other != kEmptySite) dsu.unite(node, other);
    }
  }

  for (std::int32_t node = 0; node < n0; ++node) {
    if (dsu.find(node) == node) report.sizes.push_back(dsu.size_of(node));
  }
  std::sort(report.sizes.begin(), report.sizes.end(), std::greater<>());
  report.largest = report.sizes.front();
  return report;
}

double connectivity_sample(const ComponentReport& report) {
  if (report.n0 <= 1) return 1.0;
  return static_cast<double>(report.largest) / static_cast<double>(report.n0);
}

double connectivity_sample(const Configuration& config) {
  if (config.node_count() <= 1) return 1.0;
  return connectivity_sample(components_burning(config));
}

}  // namespace manet
