#include <doctest.h>

#include <algorithm>
#include <set>

#include "manetsim/lattice.hpp"
#include "oracles.hpp"

using namespace manet;

TEST_CASE("wrap reduces into canonical form and is idempotent") {
  const LatticeConfig cfg(10, 1);
  CHECK(wrap(0, 0, cfg) == SiteCoord{0, 0});
  CHECK(wrap(-1, 10, cfg) == SiteCoord{9, 0});
  CHECK(wrap(23, -7, cfg) == SiteCoord{3, 3});
  for (int q = -25; q <= 25; q += 7) {
    for (int r = -25; r <= 25; r += 5) {
      const SiteCoord once = wrap(q, r, cfg);
      CHECK(wrap(once.q, once.r, cfg) == once);
      CHECK(once.q >= 0);
      CHECK(once.q < cfg.L);
      CHECK(once.r >= 0);
      CHECK(once.r < cfg.L);
    }
  }
}

TEST_CASE("hex_distance basics") {
  const LatticeConfig cfg(10, 2);
  CHECK(hex_distance({3, 4}, {3, 4}, cfg) == 0);
  CHECK(hex_distance({3, 4}, {4, 4}, cfg) == 1);
  // Periodic image: (0,0) and (L-1,0) are adjacent across the boundary.
  CHECK(hex_distance({0, 0}, {9, 0}, cfg) == 1);
  CHECK(oracle::bfs_distance({0, 0}, {9, 0}, cfg) == 1);
}

TEST_CASE("hex_distance equals BFS graph distance exhaustively (L=8)") {
  const LatticeConfig cfg(8, 2);
  for (int qa = 0; qa < cfg.L; ++qa) {
    for (int ra = 0; ra < cfg.L; ++ra) {
      const SiteCoord a{qa, ra};
      for (int qb = 0; qb < cfg.L; ++qb) {
        for (int rb = 0; rb < cfg.L; ++rb) {
          const SiteCoord b{qb, rb};
          const int closed_form = hex_distance(a, b, cfg);
          REQUIRE(closed_form == oracle::bfs_distance(a, b, cfg));
          REQUIRE(closed_form == hex_distance(b, a, cfg));
        }
      }
    }
  }
}

TEST_CASE("hex_distance satisfies the triangle inequality") {
  const LatticeConfig cfg(9, 2);
  const SiteCoord pts[] = {{0, 0}, {3, 7}, {8, 1}, {4, 4}, {1, 8}, {7, 7}};
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      for (const auto& c : pts) {
        CHECK(hex_distance(a, c, cfg) <=
              hex_distance(a, b, cfg) + hex_distance(b, c, cfg));
      }
    }
  }
}

TEST_CASE("neighborhood_offsets sizes") {
  CHECK(neighborhood_offsets(1).size() == 6);
  // Fig. 1: a node with r = 2 r0 has 18 neighbors at full occupation.
  CHECK(neighborhood_offsets(2).size() == 18);
  CHECK(neighborhood_offsets(3).size() == 36);
  for (int z = 1; z <= 6; ++z) {
    CHECK(neighborhood_offsets(z).size() ==
          static_cast<std::size_t>(neighborhood_size(z)));
  }
  CHECK_THROWS_AS(neighborhood_offsets(0), std::invalid_argument);
}

TEST_CASE("neighborhood_offsets z=3 matches BFS ball enumeration") {
  const auto table = neighborhood_offsets(3);
  const auto ball = oracle::enumerate_ball(3);
  REQUIRE(ball.size() == 36);
  auto key = [](const SiteOffset& o) { return std::pair(o.dq, o.dr); };
  std::set<std::pair<int, int>> got, want;
  for (const auto& o : table.offsets) got.insert(key(o));
  for (const auto& o : ball) want.insert(key(o));
  CHECK(got == want);
}

TEST_CASE("stencil contains no zero offset and is closed under negation") {
  for (int z : {1, 2, 4}) {
    const auto table = neighborhood_offsets(z);
    std::set<std::pair<int, int>> entries;
    for (const auto& o : table.offsets) {
      CHECK(!(o.dq == 0 && o.dr == 0));
      entries.insert({o.dq, o.dr});
    }
    CHECK(entries.size() == table.size());  // distinct
    for (const auto& o : table.offsets) {
      CHECK(entries.count({-o.dq, -o.dr}) == 1);
    }
  }
}

TEST_CASE("stencil applied from any site yields 3z(z+1) distinct sites") {
  for (int z : {1, 2, 3}) {
    const LatticeConfig cfg(7, z);
    const auto table = neighborhood_offsets(z);
    for (int q = 0; q < cfg.L; ++q) {
      for (int r = 0; r < cfg.L; ++r) {
        std::set<std::int32_t> sites;
        for (const auto& o : table.offsets) {
          sites.insert(cfg.site_index(wrap(q + o.dq, r + o.dr, cfg)));
        }
        REQUIRE(sites.size() == static_cast<std::size_t>(neighborhood_size(z)));
        CHECK(sites.count(cfg.site_index({q, r})) == 0);
      }
    }
  }
}

TEST_CASE("LatticeConfig rejects L < 2z+1") {
  CHECK_THROWS_AS(LatticeConfig(4, 2), std::invalid_argument);
  CHECK_NOTHROW(LatticeConfig(5, 2));
}
