#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "manetsim/connectivity.hpp"
#include "manetsim/dynamics.hpp"

namespace manet {

/// Probability that a node has exactly k neighbors in the range-z graph.
struct DegreeDistribution {
  std::map<int, double> p;
  int kmax = 0;
  std::int64_t samples = 0;
};

/// Degree of every node: occupied sites at hex distance in [1, z].
/// No self-loops, no multi-edges.
std::vector<int> degree_sequence(const Configuration& config);

/// Arithmetic mean of the degree sequence (0 for an empty network).
/// Ensemble expectation is 3z(z+1) * (n0-1)/(N-1), i.e. ~3z(z+1)*sigma.
double mean_degree(const Configuration& config);

/// C(k): clustering coefficient averaged over nodes of degree k.
/// C_i = closed neighbor pairs / C(k_i, 2); a pair is closed iff its two
/// members are within hex distance z of each other.  Defined for k >= 2;
/// degree classes with no qualifying node are absent.
std::map<int, double> clustering_by_degree(const Configuration& config);

/// k_nn(k): per-node mean neighbor degree, averaged within each degree
/// class.  Defined for k >= 1.
std::map<int, double> knn_by_degree(const Configuration& config);

/// Cutoff degree: the largest k whose upper tail P(K >= k) still carries
/// at least epsilon of the probability mass; degrees above it occur with
/// probability < epsilon.  A distribution with all mass at zero gives 0.
int cutoff_degree(const DegreeDistribution& dist, double epsilon);

/// Ensemble-pooled network metrics at one (z, sigma, L) operating point.
///
/// All accumulators are exact integer sums (triangle and neighbor-degree
/// sums share the class denominator k(k-1)/2 resp. k), so pooling across
/// realizations and merging partial tables is associative, commutative,
/// and bit-reproducible.
struct MetricsTable {
  int L = 0;
  int z = 0;
  double sigma = 0.0;
  double epsilon = 1e-3;
  double eta_threshold = 0.9995;

  std::int64_t accepted = 0;       // realizations pooled
  std::int64_t attempts = 0;       // realizations examined
  std::int64_t node_samples = 0;   // total nodes pooled

  std::vector<std::int64_t> degree_count;        // index k in [0, 3z(z+1)]
  std::vector<std::int64_t> triangle_sum;        // closed pairs, by class
  std::vector<std::int64_t> neighbor_degree_sum; // sum_j k_j, by class

  MetricsTable() = default;
  MetricsTable(int L_, int z_, double sigma_, double epsilon_,
               double eta_threshold_);

  /// Pools one accepted configuration (node-weighted).
  void accumulate(const Configuration& config);

  DegreeDistribution degree_distribution() const;
  double mean_degree() const;
  std::map<int, double> clustering_by_degree() const;
  std::map<int, double> knn_by_degree() const;
  int cutoff_degree() const;
  double acceptance_rate() const;

  /// CSV: k, p_k, C_k, knn_k with empty cells for undefined entries.
  void write_csv(std::ostream& out) const;
};

}  // namespace manet
