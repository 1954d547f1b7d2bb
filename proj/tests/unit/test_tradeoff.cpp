#include <doctest.h>

#include <vector>

#include "d2d/tradeoff.hpp"

using namespace d2d;

namespace {

MetricEstimate est(double v, double se = 0.0) { return {v, se, 100, EstimateMethod::ClosedForm}; }

MetricPoint point(double rate, double tl, double tg, double rbar, double se = 0.0) {
  return {rate, est(tl, se), est(tg, se), est(rbar, se)};
}

std::vector<GridEvaluation> toy() {
  GridEvaluation a{10.0, 1e-4, 20.0, 2e-3, {point(0.01, 0.9, 0.20, 0.009), point(0.1, 0.5, 0.10, 0.05)}};
  GridEvaluation b{20.0, 1e-4, 40.0, 6e-4, {point(0.01, 0.95, 0.24, 0.0095), point(0.1, 0.4, 0.08, 0.04)}};
  return {a, b};
}

NetworkConfig small() {
  NetworkConfig cfg;
  cfg.parent = {ParentKind::MaternII, 2e-4, 40.0};
  cfg.cluster_radius = 20.0;
  cfg.lambda_u = 0.01;
  cfg.lambda_r = 0.01;
  cfg.content = ContentConfig::zipf(10, 2, 0.6);
  cfg.simulation.window_factor = 10.0;
  cfg.simulation.law_replicates = 2000;
  return cfg;
}

SweepGrid small_grid() {
  SweepGrid g;
  g.cluster_radii = {10.0, 20.0};
  g.rates = {1e-3, 0.05, 0.3};
  g.proposal_intensities = {1e-4, 1e-3};
  g.clearance_factors = {1.0, 1.5};
  g.constraints = {0.0, 0.01, 0.03, 0.1, 10.0};
  return g;
}

}  // namespace

TEST_SUITE("tradeoff") {

TEST_CASE("floor test under noise") {
  CHECK(meets_floor(est(0.5, 0.01), 0.47));
  CHECK_FALSE(meets_floor(est(0.5, 0.01), 0.48));
  CHECK(meets_floor(est(0.0, 1.0), 0.0));
  CHECK(meets_floor(est(0.0, 1.0), -1.0));
}

TEST_CASE("optimizers on a hand-built grid") {
  const auto evals = toy();
  const auto g = optimize_global(evals, {0.0, 0.03, 0.045, 0.06});
  CHECK(g[0].feasible);
  CHECK(g[0].objective.value == 0.24);
  CHECK(g[0].cluster_radius == 20.0);
  CHECK(g[1].objective.value == 0.10);
  CHECK(g[2].objective.value == 0.10);
  CHECK(g[2].rate == 0.1);
  CHECK_FALSE(g[3].feasible);
  CHECK(g[3].objective.value == 0.0);

  const auto l = optimize_local(evals, {0.0, 0.03});
  CHECK(l[0].objective.value == 0.95);
  CHECK(l[1].objective.value == 0.5);

  const auto lg = optimize_local_global(evals, {0.0, 0.6, 0.92, 0.99});
  CHECK(lg[0].objective.value == 0.24);
  CHECK(lg[1].objective.value == 0.24);
  CHECK(lg[2].objective.value == 0.24);
  CHECK_FALSE(lg[3].feasible);
}

TEST_CASE("grid validation") {
  auto g = small_grid();
  CHECK_NOTHROW(g.validate());
  g.clearance_factors = {0.9};
  CHECK_THROWS(g.validate());
  g = small_grid();
  g.rates.clear();
  CHECK_THROWS(g.validate());
}

TEST_CASE("sweep: clearance, density floor and frontier monotonicity") {
  const auto cfg = small();
  auto grid = small_grid();
  const MetricOptions opts{1, 300, LtSource::Auto};
  const auto evals = evaluate_grid(grid, cfg, opts);
  CHECK(evals.size() == 8);
  for (const auto& e : evals) {
    CHECK(e.delta >= 2.0 * e.cluster_radius);
    CHECK(e.metrics.size() == grid.rates.size());
  }
  for (const auto& frontier : {optimize_global(evals, grid.constraints), optimize_local(evals, grid.constraints)}) {
    for (std::size_t i = 1; i < frontier.size(); ++i)
      CHECK(frontier[i].objective.value <= frontier[i - 1].objective.value);
    CHECK_FALSE(frontier.back().feasible);  // r = 10 is out of reach
  }

  grid.density_floor = matern_ii_density(1e-3, 40.0) * 0.99;
  const auto floored = evaluate_grid(grid, cfg, opts);
  for (const auto& e : floored) CHECK(e.parent_density >= grid.density_floor);
  CHECK(floored.size() < evals.size());
  const auto tighter = optimize_local(floored, grid.constraints);
  const auto looser = optimize_local(evals, grid.constraints);
  for (std::size_t i = 0; i < tighter.size(); ++i) CHECK(tighter[i].objective.value <= looser[i].objective.value);

  grid.density_floor = 1.0;
  CHECK(evaluate_grid(grid, cfg, opts).empty());
  CHECK_FALSE(optimize_local(grid, cfg, opts).front().feasible);
}

TEST_CASE("local-global: vacuous floor equals the global optimum at that rate") {
  const auto cfg = small();
  const auto grid = small_grid();
  const MetricOptions opts{2, 300, LtSource::Auto};
  const auto lg = optimize_local_global(grid, cfg, 0.05, opts);
  auto fixed = grid;
  fixed.rates = {0.05};
  const auto g = optimize_global(evaluate_grid(fixed, cfg, opts), {0.0});
  CHECK(lg[0].objective.value == g[0].objective.value);
  for (std::size_t i = 1; i < lg.size(); ++i) CHECK(lg[i].objective.value <= lg[i - 1].objective.value);
  CHECK_FALSE(lg.back().feasible);  // t_c = 10 exceeds any match probability
}

TEST_CASE("reported optima stay feasible with four times the replicates") {
  const auto cfg = small();
  auto grid = small_grid();
  grid.constraints = {0.005, 0.02};
  const auto frontier = optimize_global(grid, cfg, {3, 400, LtSource::Auto});
  for (const auto& t : frontier) {
    REQUIRE(t.feasible);
    auto at = cfg;
    at.cluster_radius = t.cluster_radius;
    at.parent.delta = t.delta;
    at.parent.lambda = t.lambda;
    const auto again = average_rate(at, t.rate, {33, 1600, LtSource::Auto});
    CHECK(again.value >= t.constraint);
  }
}

TEST_CASE("grid parent collapses the intensity axis") {
  auto cfg = small();
  cfg.parent = {ParentKind::TranslatedGrid, 0.0, 40.0};
  cfg.channel.kind = ChannelKind::WinnerLognormal;
  auto grid = small_grid();
  grid.cluster_radii = {20.0};
  grid.clearance_factors = {1.25};
  const auto evals = evaluate_grid(grid, cfg, {4, 100, LtSource::Auto});
  REQUIRE(evals.size() == 1);
  CHECK(evals[0].delta == doctest::Approx(50.0));
  CHECK(evals[0].parent_density == doctest::Approx(1.0 / 2500.0));
}

}
