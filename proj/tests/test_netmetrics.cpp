#include <doctest.h>

#include <cmath>
#include <sstream>

#include "manetsim/netmetrics.hpp"
#include "oracles.hpp"

using namespace manet;

namespace {

Configuration random_config(int L, int z, double sigma, std::uint64_t tag) {
  const LatticeConfig cfg(L, z);
  RngStream rng = RngStream(71).derive({tag});
  return random_placement(cfg, sigma, rng);
}

}  // namespace

TEST_CASE("full lattice at z=2: the paper's closed forms") {
  const LatticeConfig cfg(12, 2);
  RngStream rng(3);
  const Configuration c = random_placement(cfg, 1.0, rng);

  for (int k : degree_sequence(c)) CHECK(k == 18);
  CHECK(mean_degree(c) == 18.0);

  // 81 closed triplets out of C(18,2) = 153 pairs.
  const auto ck = clustering_by_degree(c);
  REQUIRE(ck.size() == 1);
  CHECK(ck.at(18) == doctest::Approx(81.0 / 153.0).epsilon(1e-15));

  const auto knn = knn_by_degree(c);
  REQUIRE(knn.size() == 1);
  CHECK(knn.at(18) == 18.0);
}

TEST_CASE("isolated node has degree zero and no clustering entry") {
  const LatticeConfig cfg(12, 2);
  const Configuration c(cfg, {SiteCoord{0, 0}, SiteCoord{6, 6}});
  const auto degrees = degree_sequence(c);
  CHECK(degrees[0] == 0);
  CHECK(degrees[1] == 0);
  CHECK(clustering_by_degree(c).empty());
  CHECK(knn_by_degree(c).empty());
}

TEST_CASE("node with two mutually adjacent neighbors has C_i = 1") {
  const LatticeConfig cfg(12, 1);
  // Three pairwise-adjacent sites: (0,0), (1,0), (0,1).
  const Configuration c(cfg, {SiteCoord{0, 0}, SiteCoord{1, 0}, SiteCoord{0, 1}});
  const auto ck = clustering_by_degree(c);
  REQUIRE(ck.count(2) == 1);
  CHECK(ck.at(2) == 1.0);
}

TEST_CASE("two mutually adjacent nodes: knn(1) = 1") {
  const LatticeConfig cfg(12, 2);
  const Configuration c(cfg, {SiteCoord{0, 0}, SiteCoord{1, 0}});
  const auto knn = knn_by_degree(c);
  REQUIRE(knn.count(1) == 1);
  CHECK(knn.at(1) == 1.0);
}

TEST_CASE("degree sequence matches the pairwise oracle") {
  const Configuration c = random_config(12, 2, 30.0 / 144.0, 5);
  CHECK(degree_sequence(c) == oracle::pairwise_degrees(c));
}

TEST_CASE("clustering matches the brute-force triangle count") {
  for (std::uint64_t t = 0; t < 8; ++t) {
    const Configuration c = random_config(12, 2, 30.0 / 144.0, 100 + t);
    const auto got = clustering_by_degree(c);
    const auto want = oracle::pairwise_clustering(c);
    REQUIRE(got.size() == want.size());
    for (const auto& [k, v] : want) {
      REQUIRE(got.count(k) == 1);
      CHECK(got.at(k) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("knn matches the double-loop oracle") {
  for (std::uint64_t t = 0; t < 8; ++t) {
    const Configuration c = random_config(12, 3, 30.0 / 144.0, 200 + t);
    const auto got = knn_by_degree(c);
    const auto want = oracle::pairwise_knn(c);
    REQUIRE(got.size() == want.size());
    for (const auto& [k, v] : want) {
      CHECK(got.at(k) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("degree symmetry via an explicit edge list") {
  const Configuration c = random_config(10, 2, 0.3, 17);
  const auto n0 = c.node_count();
  std::vector<int> degree_from_edges(n0, 0);
  for (std::int32_t i = 0; i < n0; ++i) {
    for (std::int32_t j = 0; j < n0; ++j) {
      if (i == j) continue;
      const bool ij = hex_distance(c.position(i), c.position(j),
                                   c.lattice()) <= c.lattice().z;
      const bool ji = hex_distance(c.position(j), c.position(i),
                                   c.lattice()) <= c.lattice().z;
      REQUIRE(ij == ji);
      if (ij && i < j) {
        ++degree_from_edges[i];
        ++degree_from_edges[j];
      }
    }
  }
  CHECK(degree_from_edges == degree_sequence(c));
}

TEST_CASE("cutoff_degree tail rule") {
  SUBCASE("point mass") {
    DegreeDistribution d;
    d.p[5] = 1.0;
    d.kmax = 5;
    d.samples = 10;
    CHECK(cutoff_degree(d, 0.5) == 5);
    CHECK(cutoff_degree(d, 1e-3) == 5);
  }
  SUBCASE("uniform over 0..9 with eps = 0.15") {
    DegreeDistribution d;
    for (int k = 0; k < 10; ++k) d.p[k] = 0.1;
    d.kmax = 9;
    d.samples = 10;
    CHECK(cutoff_degree(d, 0.15) == 8);
  }
  SUBCASE("all mass at zero") {
    DegreeDistribution d;
    d.p[0] = 1.0;
    d.samples = 4;
    CHECK(cutoff_degree(d, 0.25) == 0);
  }
  SUBCASE("epsilon bounds") {
    DegreeDistribution d;
    d.p[1] = 1.0;
    CHECK_THROWS_AS(cutoff_degree(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cutoff_degree(d, 1.0), std::invalid_argument);
  }
}

TEST_CASE("MetricsTable pools configurations with exact counts") {
  const LatticeConfig cfg(12, 2);
  MetricsTable table(12, 2, 0.3, 1e-3, 0.0);
  std::int64_t nodes = 0;
  for (std::uint64_t t = 0; t < 5; ++t) {
    RngStream rng = RngStream(73).derive({t});
    const Configuration c = random_placement(cfg, 0.3, rng);
    table.accumulate(c);
    nodes += c.node_count();
  }
  table.attempts = table.accepted;
  CHECK(table.node_samples == nodes);
  CHECK(table.acceptance_rate() == 1.0);

  const DegreeDistribution dist = table.degree_distribution();
  double total = 0.0;
  for (const auto& [k, p] : dist.p) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // mean_degree equals sum k p(k)
  double kp = 0.0;
  for (const auto& [k, p] : dist.p) kp += k * p;
  CHECK(table.mean_degree() == doctest::Approx(kp).epsilon(1e-9));

  // C(k) in [0, 1] and defined only for k >= 2
  for (const auto& [k, c] : table.clustering_by_degree()) {
    CHECK(k >= 2);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  for (const auto& [k, v] : table.knn_by_degree()) {
    CHECK(k >= 1);
    CHECK(v > 0.0);
  }
}

TEST_CASE("metrics CSV has the fixed schema") {
  const LatticeConfig cfg(9, 2);
  RngStream rng(7);
  MetricsTable table(9, 2, 1.0, 1e-3, 0.0);
  table.accumulate(random_placement(cfg, 1.0, rng));
  table.attempts = 1;
  std::ostringstream out;
  table.write_csv(out);
  const std::string text = out.str();
  CHECK(text.find("# z=2 sigma=1 L=9 realizations=1") != std::string::npos);
  CHECK(text.find("k,p_k,C_k,knn_k") != std::string::npos);
  CHECK(text.find("18,1,0.529411764706,18") != std::string::npos);
}
