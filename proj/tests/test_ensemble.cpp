#include <doctest.h>

#include <cmath>

#include "manetsim/ensemble.hpp"
#include "oracles.hpp"

using namespace manet;

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.L = 12;
  plan.z_list = {2};
  plan.sigma_grid = {0.05, 0.15, 0.3};
  plan.realizations = 40;
  plan.seed = 404;
  plan.threads = 2;
  return plan;
}

}  // namespace

TEST_CASE("plan validation rejects bad input before any work") {
  ExperimentPlan plan = small_plan();
  SUBCASE("L too small for z") {
    plan.z_list = {6};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  }
  SUBCASE("empty grid") {
    plan.sigma_grid.clear();
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  }
  SUBCASE("non-increasing grid") {
    plan.sigma_grid = {0.2, 0.2};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  }
  SUBCASE("sigma outside (0, 1]") {
    plan.sigma_grid = {0.0, 0.5};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  }
}

TEST_CASE("sigma = 1 gives eta = 1 with zero stderr") {
  ExperimentPlan plan = small_plan();
  plan.sigma_grid = {1.0};
  plan.realizations = 10;
  const auto curves = run_connectivity_sweep(plan);
  REQUIRE(curves.size() == 1);
  REQUIRE(curves[0].points.size() == 1);
  CHECK(curves[0].points[0].eta_mean == 1.0);
  CHECK(curves[0].points[0].eta_stderr == 0.0);
}

TEST_CASE("ensemble means equal the closure oracle with shared seeds") {
  ExperimentPlan plan = small_plan();
  plan.sigma_grid = {0.05};
  plan.realizations = 200;
  const auto curves = run_connectivity_sweep(plan);

  // Same realizations through realized_configuration + O(n0^3) oracle.
  double mean = 0.0;
  for (int rep = 0; rep < plan.realizations; ++rep) {
    const Configuration c = realized_configuration(plan, 2, 0, rep);
    const double sample =
        c.node_count() <= 1
            ? 1.0
            : static_cast<double>(oracle::closure_largest(c)) /
                  static_cast<double>(c.node_count());
    mean += sample;
  }
  mean /= plan.realizations;
  CHECK(curves[0].points[0].eta_mean == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("worker count does not change results") {
  ExperimentPlan plan = small_plan();
  auto run_with = [&](int threads) {
    ExperimentPlan p = plan;
    p.threads = threads;
    return run_connectivity_sweep(p);
  };
  const auto one = run_with(1);
  const auto four = run_with(4);
  REQUIRE(one.size() == four.size());
  for (std::size_t c = 0; c < one.size(); ++c) {
    for (std::size_t i = 0; i < one[c].points.size(); ++i) {
      CHECK(one[c].points[i].eta_mean == four[c].points[i].eta_mean);
      CHECK(one[c].points[i].eta_stderr == four[c].points[i].eta_stderr);
    }
  }
}

TEST_CASE("block merge equals the monolithic run") {
  const ExperimentPlan plan = small_plan();
  const CurveAccum whole = run_connectivity_block(plan, 2, 0, 40);
  std::vector<CurveAccum> blocks;
  for (int b = 0; b < 4; ++b) {
    blocks.push_back(run_connectivity_block(plan, 2, 10 * b, 10 * (b + 1)));
  }
  const CurveAccum merged = merge(blocks);
  REQUIRE(merged.points.size() == whole.points.size());
  for (std::size_t i = 0; i < whole.points.size(); ++i) {
    CHECK(merged.points[i].largest_sum == whole.points[i].largest_sum);
    CHECK(merged.points[i].largest_sq_sum == whole.points[i].largest_sq_sum);
    CHECK(merged.points[i].count == whole.points[i].count);
    // Bit-identical finalized values.
    CHECK(merged.finalize().points[i].eta_mean ==
          whole.finalize().points[i].eta_mean);
    CHECK(merged.finalize().points[i].eta_stderr ==
          whole.finalize().points[i].eta_stderr);
  }
}

TEST_CASE("merge is commutative and has an identity") {
  const ExperimentPlan plan = small_plan();
  const CurveAccum a = run_connectivity_block(plan, 2, 0, 20);
  const CurveAccum b = run_connectivity_block(plan, 2, 20, 40);
  CurveAccum empty = run_connectivity_block(plan, 2, 0, 0);

  const CurveAccum ab = merge(a, b);
  const CurveAccum ba = merge(b, a);
  for (std::size_t i = 0; i < ab.points.size(); ++i) {
    CHECK(ab.points[i].largest_sum == ba.points[i].largest_sum);
    CHECK(ab.points[i].count == ba.points[i].count);
  }
  const CurveAccum ae = merge(a, empty);
  for (std::size_t i = 0; i < ae.points.size(); ++i) {
    CHECK(ae.points[i].largest_sum == a.points[i].largest_sum);
    CHECK(ae.points[i].count == a.points[i].count);
  }
}

TEST_CASE("merge rejects mismatched fragments") {
  const ExperimentPlan plan = small_plan();
  ExperimentPlan other = plan;
  other.sigma_grid = {0.05, 0.15, 0.4};
  const CurveAccum a = run_connectivity_block(plan, 2, 0, 5);
  const CurveAccum b = run_connectivity_block(other, 2, 0, 5);
  CHECK_THROWS_AS(merge(a, b), std::invalid_argument);

  MetricsTable ta(12, 2, 0.3, 1e-3, 0.0);
  MetricsTable tb(12, 2, 0.4, 1e-3, 0.0);
  CHECK_THROWS_AS(merge(ta, tb), std::invalid_argument);
}

TEST_CASE("metrics merge pools disjoint attempt blocks exactly") {
  const LatticeConfig cfg(12, 2);
  MetricsTable whole(12, 2, 0.5, 1e-3, 0.0);
  MetricsTable first(12, 2, 0.5, 1e-3, 0.0);
  MetricsTable second(12, 2, 0.5, 1e-3, 0.0);
  for (std::uint64_t t = 0; t < 6; ++t) {
    RngStream rng = RngStream(81).derive({t});
    const Configuration c = random_placement(cfg, 0.5, rng);
    whole.accumulate(c);
    (t < 3 ? first : second).accumulate(c);
  }
  const MetricsTable merged = merge(first, second);
  CHECK(merged.node_samples == whole.node_samples);
  CHECK(merged.degree_count == whole.degree_count);
  CHECK(merged.triangle_sum == whole.triangle_sum);
  CHECK(merged.neighbor_degree_sum == whole.neighbor_degree_sum);
  CHECK(merged.mean_degree() == whole.mean_degree());
}

TEST_CASE("run_metrics with threshold 0 accepts every attempt") {
  ExperimentPlan plan = small_plan();
  plan.realizations = 15;
  const MetricsTable table = run_metrics(plan, 0.3, 2, 0.0);
  CHECK(table.accepted == 15);
  CHECK(table.attempts == 15);
  CHECK(table.acceptance_rate() == 1.0);
}

TEST_CASE("run_metrics reports infeasibility with the acceptance rate") {
  ExperimentPlan plan = small_plan();
  plan.realizations = 5;
  // sigma far below the transition: threshold 0.9995 is unreachable.
  CHECK_THROWS_WITH_AS(
      (void)run_metrics(plan, 0.05, 2, 0.9995),
      doctest::Contains("acceptance rate"), std::runtime_error);
}

TEST_CASE("run_metrics at sigma = 1 reproduces the closed forms") {
  ExperimentPlan plan = small_plan();
  plan.realizations = 3;
  const MetricsTable table = run_metrics(plan, 1.0, 2, 0.9995);
  CHECK(table.mean_degree() == 18.0);
  const auto ck = table.clustering_by_degree();
  REQUIRE(ck.count(18) == 1);
  CHECK(ck.at(18) == doctest::Approx(81.0 / 153.0).epsilon(1e-15));
  const auto dist = table.degree_distribution();
  CHECK(dist.p.at(18) == 1.0);
  CHECK(table.knn_by_degree().at(18) == 18.0);
}

TEST_CASE("trajectory mode: stationary statistics, same grid schema") {
  ExperimentPlan plan = small_plan();
  plan.mode = ExperimentPlan::Mode::trajectory;
  plan.trajectory_stride = 3;
  plan.realizations = 30;
  const auto curves = run_connectivity_sweep(plan);
  REQUIRE(curves.size() == 1);
  REQUIRE(curves[0].points.size() == plan.sigma_grid.size());
  for (const auto& p : curves[0].points) {
    CHECK(p.realizations == 30);
    CHECK(p.eta_mean >= 0.0);
    CHECK(p.eta_mean <= 1.0);
  }
}

TEST_CASE("eta is monotone nondecreasing in sigma within 2 stderr") {
  ExperimentPlan plan = small_plan();
  plan.sigma_grid = {0.1, 0.2, 0.3, 0.45, 0.6};
  plan.realizations = 60;
  const auto curves = run_connectivity_sweep(plan);
  const auto& pts = curves[0].points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].eta_mean >=
          pts[i - 1].eta_mean -
              2.0 * (pts[i].eta_stderr + pts[i - 1].eta_stderr));
  }
}
