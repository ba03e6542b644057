#include <doctest.h>

#include "manetsim/connectivity.hpp"
#include "oracles.hpp"

using namespace manet;

TEST_CASE("empty configuration") {
  const LatticeConfig cfg(8, 2);
  const Configuration c(cfg, {});
  const ComponentReport r = components_burning(c);
  CHECK(r.sizes.empty());
  CHECK(r.largest == 0);
  CHECK(connectivity_sample(c) == 1.0);  // vacuously connected
}

TEST_CASE("two nodes at the adjacency boundary") {
  const LatticeConfig cfg(12, 2);
  SUBCASE("at hex distance z: one component of size 2") {
    const Configuration c(cfg, {SiteCoord{0, 0}, SiteCoord{2, 0}});
    const ComponentReport r = components_burning(c);
    REQUIRE(r.sizes.size() == 1);
    CHECK(r.largest == 2);
    CHECK(connectivity_sample(c) == 1.0);
  }
  SUBCASE("at hex distance z+1: two singletons") {
    const Configuration c(cfg, {SiteCoord{0, 0}, SiteCoord{3, 0}});
    const ComponentReport r = components_burning(c);
    REQUIRE(r.sizes.size() == 2);
    CHECK(r.largest == 1);
    CHECK(connectivity_sample(c) == 0.5);
  }
}

TEST_CASE("single node is vacuously connected") {
  const LatticeConfig cfg(8, 1);
  const Configuration c(cfg, {SiteCoord{4, 4}});
  CHECK(connectivity_sample(c) == 1.0);
}

TEST_CASE("full lattice is one component") {
  const LatticeConfig cfg(9, 2);
  RngStream rng(2);
  const Configuration c = random_placement(cfg, 1.0, rng);
  const ComponentReport r = components_unionfind(c);
  REQUIRE(r.sizes.size() == 1);
  CHECK(r.largest == cfg.site_count());
  CHECK(connectivity_sample(c) == 1.0);
}

TEST_CASE("burning matches the transitive-closure oracle") {
  const LatticeConfig cfg(12, 2);
  for (int t = 0; t < 40; ++t) {
    RngStream rng = RngStream(37).derive({static_cast<std::uint64_t>(t)});
    const Configuration c =
        random_placement(cfg, 20.0 / cfg.site_count(), rng);
    const ComponentReport r = components_burning(c);
    CHECK(r.sizes == oracle::closure_components(c));
  }
}

TEST_CASE("burning and union-find agree on random configurations") {
  for (int L : {8, 12}) {
    for (int z : {1, 2, 3}) {
      const LatticeConfig cfg(L, z);
      for (int t = 0; t < 25; ++t) {
        const double sigma = 0.1 + 0.08 * (t % 10);
        RngStream rng = RngStream(43).derive(
            {static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(z),
             static_cast<std::uint64_t>(t)});
        const Configuration c = random_placement(cfg, sigma, rng);
        const ComponentReport a = components_burning(c);
        const ComponentReport b = components_unionfind(c);
        REQUIRE(a.sizes == b.sizes);
        REQUIRE(a.largest == b.largest);
      }
    }
  }
}

TEST_CASE("connectivity_sample is invariant under global translation") {
  const LatticeConfig cfg(10, 2);
  RngStream rng(53);
  const Configuration c = random_placement(cfg, 0.3, rng);
  const double base = connectivity_sample(c);
  for (const auto& [dq, dr] : {std::pair{1, 0}, {0, 1}, {4, 7}, {9, 9}}) {
    std::vector<SiteCoord> shifted;
    for (const auto& p : c.positions()) {
      shifted.push_back(wrap(p.q + dq, p.r + dr, cfg));
    }
    const Configuration moved(cfg, shifted);
    CHECK(connectivity_sample(moved) == base);
  }
}

TEST_CASE("adding a node never shrinks the largest component") {
  const LatticeConfig cfg(10, 2);
  RngStream rng(59);
  Configuration c = random_placement(cfg, 0.2, rng);
  std::int64_t prev = components_burning(c).largest;
  std::vector<SiteCoord> positions = c.positions();
  for (int q = 0; q < cfg.L && positions.size() < 60; ++q) {
    for (int r = 0; r < cfg.L && positions.size() < 60; r += 3) {
      const SiteCoord site{q, r};
      if (c.occupied(site)) continue;
      positions.push_back(site);
      c = Configuration(cfg, positions);
      const std::int64_t cur = components_burning(c).largest;
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("neighbor probe budget: at most n0 * 3z(z+1)") {
  const LatticeConfig cfg(200, 6);
  RngStream rng(61);
  const Configuration c = random_placement(cfg, 0.1, rng);
  const std::int64_t budget = c.node_count() * neighborhood_size(6);
  CHECK(components_burning(c).neighbor_probes <= budget);
  CHECK(components_unionfind(c).neighbor_probes <= budget);
}
