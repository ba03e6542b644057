#include "manetsim/dynamics.hpp"

#include <cassert>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace manet {

namespace {

// The six unit moves of the triangular lattice in axial coordinates.
constexpr SiteOffset kUnitMoves[6] = {{1, 0},  {-1, 0}, {0, 1},
                                      {0, -1}, {1, -1}, {-1, 1}};

}  // namespace

Configuration::Configuration(LatticeConfig cfg, std::vector<SiteCoord> positions)
    : cfg_(cfg),
      positions_(std::move(positions)),
      site_to_node_(cfg.site_count(), kEmptySite) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    auto& slot = site_to_node_[cfg_.site_index(positions_[i])];
    if (slot != kEmptySite) {
      throw std::invalid_argument("Configuration: two nodes share a site");
    }
    slot = static_cast<std::int32_t>(i);
  }
}

void Configuration::move_node(std::int32_t node, SiteCoord target) {
  assert(!occupied(target));
  site_to_node_[cfg_.site_index(positions_[node])] = kEmptySite;
  site_to_node_[cfg_.site_index(target)] = node;
  positions_[node] = target;
}

bool Configuration::consistent() const {
  std::int64_t found = 0;
  for (std::int32_t s = 0; s < cfg_.site_count(); ++s) {
    const std::int32_t n = site_to_node_[s];
    if (n == kEmptySite) continue;
    if (n < 0 || n >= node_count()) return false;
    if (cfg_.site_index(positions_[n]) != s) return false;
    ++found;
  }
  return found == node_count();
}

std::int64_t node_count_for(double sigma, const LatticeConfig& cfg) {
  if (sigma < 0.0 || sigma > 1.0) {
    throw std::invalid_argument("occupancy sigma must be in [0, 1]");
  }
  // nearbyint under the default rounding mode is round-half-to-even.
  return static_cast<std::int64_t>(
      std::nearbyint(sigma * static_cast<double>(cfg.site_count())));
}

Configuration random_placement(const LatticeConfig& cfg, double sigma,
                               RngStream& rng) {
  const std::int64_t n = cfg.site_count();
  const std::int64_t n0 = node_count_for(sigma, cfg);

  // Partial Fisher-Yates over all site indices: the first n0 entries are a
  // uniform sample without replacement.
  std::vector<std::int32_t> sites(n);
  std::iota(sites.begin(), sites.end(), 0);
  std::vector<SiteCoord> positions;
  positions.reserve(n0);
  for (std::int64_t i = 0; i < n0; ++i) {
    const std::int64_t j = i + static_cast<std::int64_t>(rng.bounded(n - i));
    std::swap(sites[i], sites[j]);
    positions.push_back(cfg.site_at(sites[i]));
  }
  return Configuration(cfg, std::move(positions));
}

void step(Configuration& config, RngStream& rng) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const LatticeConfig& cfg = config.lattice();
  const int L = cfg.L;

  // Fresh random visit order each sweep.
  std::vector<std::int32_t> order(n0);
  std::iota(order.begin(), order.end(), 0);
  for (std::int32_t i = n0 - 1; i > 0; --i) {
    const auto j = static_cast<std::int32_t>(rng.bounded(i + 1));
    std::swap(order[i], order[j]);
  }

  for (const std::int32_t node : order) {
    const SiteOffset dir = kUnitMoves[rng.bounded(6)];
    SiteCoord t = config.position(node);
    t.q += dir.dq;
    if (t.q >= L) t.q -= L;
    if (t.q < 0) t.q += L;
    t.r += dir.dr;
    if (t.r >= L) t.r -= L;
    if (t.r < 0) t.r += L;
    if (!config.occupied(t)) config.move_node(node, t);
  }
}

double occupancy(const Configuration& config) {
  return static_cast<double>(config.node_count()) /
         static_cast<double>(config.lattice().site_count());
}

void write_site_list(std::ostream& out, const Configuration& config,
                     std::uint64_t seed) {
  out << "# manetsim sites L=" << config.lattice().L
      << " z=" << config.lattice().z << " seed=" << seed << '\n';
  for (const SiteCoord& p : config.positions()) {
    out << p.q << ' ' << p.r << '\n';
  }
}

Configuration read_site_list(std::istream& in) {
  std::string header;
  std::getline(in, header);
  int L = 0, z = 0;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "# manetsim sites L=%d z=%d seed=%llu", &L,
                  &z, &seed) != 3) {
    throw std::runtime_error("site list: bad header: " + header);
  }
  LatticeConfig cfg(L, z);
  std::vector<SiteCoord> positions;
  int q = 0, r = 0;
  while (in >> q >> r) positions.push_back(wrap(q, r, cfg));
  return Configuration(cfg, std::move(positions));
}

}  // namespace manet
