#include "manetsim/netmetrics.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace manet {

namespace {

inline SiteCoord offset_site(const LatticeConfig& cfg, SiteCoord p,
                             SiteOffset o) {
  int q = p.q + o.dq;
  if (q >= cfg.L) q -= cfg.L;
  if (q < 0) q += cfg.L;
  int r = p.r + o.dr;
  if (r >= cfg.L) r -= cfg.L;
  if (r < 0) r += cfg.L;
  return {q, r};
}

// Neighbor ids of one node through the stencil.
void gather_neighbors(const Configuration& config,
                      const NeighborhoodTable& stencil, std::int32_t node,
                      std::vector<std::int32_t>& out) {
  out.clear();
  const SiteCoord p = config.position(node);
  for (const SiteOffset& o : stencil.offsets) {
    const std::int32_t other =
        config.occupant(offset_site(config.lattice(), p, o));
    if (other != kEmptySite) out.push_back(other);
  }
}

// Closed pairs among a node's neighbors: both endpoints within hex
// distance z of each other.
std::int64_t closed_pairs(const Configuration& config,
                          const std::vector<std::int32_t>& neighbors) {
  const LatticeConfig& cfg = config.lattice();
  std::int64_t closed = 0;
  for (std::size_t a = 0; a + 1 < neighbors.size(); ++a) {
    const SiteCoord pa = config.position(neighbors[a]);
    for (std::size_t b = a + 1; b < neighbors.size(); ++b) {
      if (hex_distance(pa, config.position(neighbors[b]), cfg) <= cfg.z)
        ++closed;
    }
  }
  return closed;
}

}  // namespace

std::vector<int> degree_sequence(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const NeighborhoodTable stencil = neighborhood_offsets(config.lattice().z);
  std::vector<int> degrees(n0, 0);
  for (std::int32_t node = 0; node < n0; ++node) {
    const SiteCoord p = config.position(node);
    int k = 0;
    for (const SiteOffset& o : stencil.offsets) {
      if (config.occupied(offset_site(config.lattice(), p, o))) ++k;
    }
    degrees[node] = k;
  }
  return degrees;
}

double mean_degree(const Configuration& config) {
  if (config.node_count() == 0) return 0.0;
  std::int64_t sum = 0;
  for (int k : degree_sequence(config)) sum += k;
  return static_cast<double>(sum) / static_cast<double>(config.node_count());
}

std::map<int, double> clustering_by_degree(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const NeighborhoodTable stencil = neighborhood_offsets(config.lattice().z);
  std::map<int, std::pair<std::int64_t, std::int64_t>> acc;  // k -> (nodes, closed)
  std::vector<std::int32_t> neighbors;
  for (std::int32_t node = 0; node < n0; ++node) {
    gather_neighbors(config, stencil, node, neighbors);
    const int k = static_cast<int>(neighbors.size());
    if (k < 2) continue;  // C_i undefined, excluded rather than counted as 0
    auto& slot = acc[k];
    slot.first += 1;
    slot.second += closed_pairs(config, neighbors);
  }
  std::map<int, double> result;
  for (const auto& [k, slot] : acc) {
    const auto pairs = static_cast<std::int64_t>(k) * (k - 1) / 2;
    result[k] = static_cast<double>(slot.second) /
                (static_cast<double>(slot.first) * static_cast<double>(pairs));
  }
  return result;
}

std::map<int, double> knn_by_degree(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const NeighborhoodTable stencil = neighborhood_offsets(config.lattice().z);
  const std::vector<int> degrees = degree_sequence(config);
  std::map<int, std::pair<std::int64_t, std::int64_t>> acc;  // k -> (nodes, sum k_j)
  std::vector<std::int32_t> neighbors;
  for (std::int32_t node = 0; node < n0; ++node) {
    gather_neighbors(config, stencil, node, neighbors);
    const int k = static_cast<int>(neighbors.size());
    if (k < 1) continue;
    std::int64_t sum = 0;
    for (std::int32_t j : neighbors) sum += degrees[j];
    auto& slot = acc[k];
    slot.first += 1;
    slot.second += sum;
  }
  std::map<int, double> result;
  for (const auto& [k, slot] : acc) {
    result[k] = static_cast<double>(slot.second) /
                (static_cast<double>(slot.first) * static_cast<double>(k));
  }
  return result;
}

int cutoff_degree(const DegreeDistribution& dist, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("cutoff_degree: epsilon must be in (0, 1)");
  }
  // Walk the degrees from the top, accumulating the upper tail P(K >= k).
  double tail = 0.0;
  for (auto it = dist.p.rbegin(); it != dist.p.rend(); ++it) {
    tail += it->second;
    if (tail >= epsilon) return it->first;
  }
  return 0;
}

MetricsTable::MetricsTable(int L_, int z_, double sigma_, double epsilon_,
                           double eta_threshold_)
    : L(L_), z(z_), sigma(sigma_), epsilon(epsilon_),
      eta_threshold(eta_threshold_) {
  const auto kmax = static_cast<std::size_t>(neighborhood_size(z_));
  degree_count.assign(kmax + 1, 0);
  triangle_sum.assign(kmax + 1, 0);
  neighbor_degree_sum.assign(kmax + 1, 0);
}

void MetricsTable::accumulate(const Configuration& config) {
  const auto n0 = static_cast<std::int32_t>(config.node_count());
  const NeighborhoodTable stencil = neighborhood_offsets(config.lattice().z);
  const std::vector<int> degrees = degree_sequence(config);
  std::vector<std::int32_t> neighbors;
  for (std::int32_t node = 0; node < n0; ++node) {
    gather_neighbors(config, stencil, node, neighbors);
    const int k = static_cast<int>(neighbors.size());
    degree_count[k] += 1;
    if (k >= 2) triangle_sum[k] += closed_pairs(config, neighbors);
    std::int64_t sum = 0;
    for (std::int32_t j : neighbors) sum += degrees[j];
    neighbor_degree_sum[k] += sum;
  }
  node_samples += n0;
  accepted += 1;
}

DegreeDistribution MetricsTable::degree_distribution() const {
  DegreeDistribution dist;
  dist.samples = node_samples;
  if (node_samples == 0) return dist;
  for (std::size_t k = 0; k < degree_count.size(); ++k) {
    if (degree_count[k] == 0) continue;
    dist.p[static_cast<int>(k)] = static_cast<double>(degree_count[k]) /
                                  static_cast<double>(node_samples);
    dist.kmax = static_cast<int>(k);
  }
  return dist;
}

double MetricsTable::mean_degree() const {
  if (node_samples == 0) return 0.0;
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < degree_count.size(); ++k) {
    sum += static_cast<std::int64_t>(k) * degree_count[k];
  }
  return static_cast<double>(sum) / static_cast<double>(node_samples);
}

std::map<int, double> MetricsTable::clustering_by_degree() const {
  std::map<int, double> result;
  for (std::size_t k = 2; k < degree_count.size(); ++k) {
    if (degree_count[k] == 0) continue;
    const auto pairs = static_cast<std::int64_t>(k) * (k - 1) / 2;
    result[static_cast<int>(k)] =
        static_cast<double>(triangle_sum[k]) /
        (static_cast<double>(degree_count[k]) * static_cast<double>(pairs));
  }
  return result;
}

std::map<int, double> MetricsTable::knn_by_degree() const {
  std::map<int, double> result;
  for (std::size_t k = 1; k < degree_count.size(); ++k) {
    if (degree_count[k] == 0) continue;
    result[static_cast<int>(k)] =
        static_cast<double>(neighbor_degree_sum[k]) /
        (static_cast<double>(degree_count[k]) * static_cast<double>(k));
  }
  return result;
}

int MetricsTable::cutoff_degree() const {
  return manet::cutoff_degree(degree_distribution(), epsilon);
}

double MetricsTable::acceptance_rate() const {
  if (attempts == 0) return 0.0;
  return static_cast<double>(accepted) / static_cast<double>(attempts);
}

void MetricsTable::write_csv(std::ostream& out) const {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "# z=%d sigma=%.12g L=%d realizations=%lld epsilon=%.12g "
                "threshold=%.12g\n",
                z, sigma, L, static_cast<long long>(accepted), epsilon,
                eta_threshold);
  out << buf;
  out << "k,p_k,C_k,knn_k\n";
  const auto c = clustering_by_degree();
  const auto knn = knn_by_degree();
  for (std::size_t k = 0; k < degree_count.size(); ++k) {
    if (degree_count[k] == 0) continue;
    const double pk = static_cast<double>(degree_count[k]) /
                      static_cast<double>(node_samples);
    std::snprintf(buf, sizeof buf, "%d,%.12g", static_cast<int>(k), pk);
    out << buf;
    const auto ck = c.find(static_cast<int>(k));
    if (ck != c.end()) {
      std::snprintf(buf, sizeof buf, ",%.12g", ck->second);
      out << buf;
    } else {
      out << ',';
    }
    const auto kk = knn.find(static_cast<int>(k));
    if (kk != knn.end()) {
      std::snprintf(buf, sizeof buf, ",%.12g", kk->second);
      out << buf;
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace manet
