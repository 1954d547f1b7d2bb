#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "d2d/cluster.hpp"
#include "d2d/metrics.hpp"

using namespace d2d;
using std::numbers::pi;

namespace {

NetworkConfig base_config() {
  NetworkConfig cfg;
  cfg.parent = {ParentKind::MaternII, 2e-4, 40.0};
  cfg.cluster_radius = 20.0;
  cfg.lambda_u = 0.01;
  cfg.lambda_r = 0.01;
  cfg.content = ContentConfig::zipf(10, 2, 0.6);
  cfg.strategy.eps = 0.5;
  cfg.simulation.window_factor = 15.0;
  cfg.simulation.law_replicates = 4000;
  return cfg;
}

// Density of the distance between two independent uniform points in a disc of radius a.
double disc_distance_pdf(double d, double a) {
  if (d <= 0.0 || d >= 2.0 * a) return 0.0;
  const double u = d / (2.0 * a);
  return 2.0 * d / (a * a) * (2.0 / pi) * (std::acos(u) - u * std::sqrt(1.0 - u * u));
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("no caching users: nothing is served") {
  auto cfg = base_config();
  cfg.lambda_u = 0.0;
  const auto p = evaluate_metrics(cfg, std::vector<double>{1e-3, 0.1}, {1, 400, LtSource::Auto});
  for (const auto& x : p) {
    CHECK(x.local.value == 0.0);
    CHECK(x.global.value == 0.0);
    CHECK(x.average_rate.value == 0.0);
  }
}

TEST_CASE("zero rate: average rate vanishes, local metric is the scheduled fraction") {
  const auto cfg = base_config();
  const auto p = evaluate_metrics(cfg, std::vector<double>{0.0}, {2, 2000, LtSource::Auto});
  CHECK(p[0].average_rate.value == 0.0);
  CHECK(p[0].local.value > 0.0);
  CHECK(p[0].local.value <= metric_bounds(cfg).local_upper + 3.0 * p[0].local.std_error);
}

TEST_CASE("global metric is coverage times local metric") {
  const auto cfg = base_config();
  const std::vector<double> rates{1e-3, 0.05, 0.3};
  const auto p = evaluate_metrics(cfg, rates, {3, 1000, LtSource::Auto});
  const double coverage = cfg.parent_density() * pi * 400.0;
  for (const auto& x : p) {
    CHECK(x.global.value == doctest::Approx(coverage * x.local.value).epsilon(1e-14));
    CHECK(x.global.std_error == doctest::Approx(coverage * x.local.std_error).epsilon(1e-14));
  }
}

TEST_CASE("metric bounds") {
  const auto cfg = base_config();
  const auto b = metric_bounds(cfg);
  CHECK(b.match_probability == doctest::Approx(match_probability(cfg.content, 0.01, 20.0)));
  CHECK(b.global_upper == doctest::Approx(cfg.parent_density() * pi * 400.0 * b.match_probability));

  auto full = cfg;
  full.content = ContentConfig::zipf(1, 1, 0.0);
  full.lambda_u = 1.0;
  CHECK(metric_bounds(full).match_probability == doctest::Approx(1.0));
  CHECK(metric_bounds(full).global_upper == doctest::Approx(full.parent_density() * pi * 400.0));

  auto tight = cfg;
  tight.cluster_radius = 50.0;
  tight.parent = {ParentKind::MaternII, 1.0, 100.0};
  CHECK(metric_bounds(tight).global_upper <= 0.25);
}

TEST_CASE("local metric tends to the match probability as the rate vanishes") {
  auto cfg = base_config();
  cfg.strategy.eps = 0.0;
  cfg.strategy.max_matches = 1 << 12;
  const double pm = metric_bounds(cfg).match_probability;
  // pooled over independent seeds so a single 3-sigma draw cannot decide it
  double zsum = 0.0;
  const int seeds = 8;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto p = evaluate_metrics(cfg, std::vector<double>{1e-6}, {std::uint64_t(seed), 20000, LtSource::Auto});
    zsum += (p[0].local.value - pm) / p[0].local.std_error;
  }
  CHECK(std::abs(zsum / std::sqrt(double(seeds))) < 3.0);
}

TEST_CASE("monotone in rate with bounds on every estimate") {
  for (LtSource src : {LtSource::ClosedForm, LtSource::MonteCarlo}) {
    const auto cfg = base_config();
    std::vector<double> rates;
    for (double r = 1e-4; r < 4.0; r *= 2.5) rates.push_back(r);
    const auto p = evaluate_metrics(cfg, rates, {5, 600, src});
    const auto b = metric_bounds(cfg);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i].local.value >= 0.0);
      CHECK(p[i].local.value <= b.local_upper + 3.0 * p[i].local.std_error);
      CHECK(p[i].global.value <= b.global_upper + 3.0 * p[i].global.std_error);
      CHECK(p[i].average_rate.value <= p[i].rate);
      if (i == 0) continue;
      // common replicates: exact monotonicity
      CHECK(p[i].local.value <= p[i - 1].local.value);
      CHECK(p[i].average_rate.value / p[i].rate <= p[i - 1].average_rate.value / p[i - 1].rate + 1e-15);
    }
  }
}

TEST_CASE("interference-free average rate against quadrature over the disc") {
  // Parents so sparse that no interferer appears: noise only.
  NetworkConfig cfg;
  cfg.parent = {ParentKind::MaternII, 1e-12, 40.0};
  cfg.cluster_radius = 20.0;
  cfg.lambda_u = 1.0;  // every request is matched
  cfg.lambda_r = 1.5 / (pi * 400.0);
  cfg.content = ContentConfig::zipf(1, 1, 0.0);
  cfg.strategy.eps = 0.0;
  cfg.strategy.max_matches = 64;
  cfg.simulation.window_factor = 2.0;
  cfg.channel.noise_power = 1e-6;
  const double rate = 0.4;
  const auto p = evaluate_metrics(cfg, std::vector<double>{rate}, {6, 40000, LtSource::MonteCarlo});

  // R sum_n P(N_r = n) E[exp(-(2^{W(n) R} - 1) N d^4)]
  const double mean_r = 1.5;
  double expected = 0.0, pn = std::exp(-mean_r);
  for (int n = 1; n < 40; ++n) {
    pn *= mean_r / n;
    const double c = (std::exp2(slot_count(n, 0.0) * rate) - 1.0) * 1e-6;
    double integral = 0.0;
    const int steps = 4000;
    for (int k = 0; k <= steps; ++k) {
      const double d = 40.0 * k / steps;
      const double w = k == 0 || k == steps ? 1.0 : (k % 2 ? 4.0 : 2.0);
      integral += w * disc_distance_pdf(d, 20.0) * std::exp(-c * std::pow(d, 4.0));
    }
    expected += pn * integral * 40.0 / steps / 3.0;
  }
  expected *= rate;
  CHECK(std::abs(p[0].average_rate.value - expected) < 3.0 * p[0].average_rate.std_error);
}

TEST_CASE("closed-form and simulated conditional LT agree roughly for sparse parents") {
  // With few interferers the far-field Poisson picture is nearly exact.
  auto cfg = base_config();
  cfg.parent.lambda = 2e-5;
  const std::vector<double> rates{0.02, 0.2};
  const auto a = evaluate_metrics(cfg, rates, {7, 3000, LtSource::ClosedForm});
  const auto b = evaluate_metrics(cfg, rates, {7, 3000, LtSource::MonteCarlo});
  for (std::size_t i = 0; i < rates.size(); ++i) CHECK(std::abs(a[i].local.value - b[i].local.value) < 0.02);
}

TEST_CASE("same seed, same numbers; different seed, different numbers") {
  const auto cfg = base_config();
  const std::vector<double> rates{0.05};
  const auto a = evaluate_metrics(cfg, rates, {8, 500, LtSource::MonteCarlo});
  const auto b = evaluate_metrics(cfg, rates, {8, 500, LtSource::MonteCarlo});
  const auto c = evaluate_metrics(cfg, rates, {9, 500, LtSource::MonteCarlo});
  CHECK(a[0].local.value == b[0].local.value);
  CHECK(a[0].average_rate.value == b[0].average_rate.value);
  CHECK(a[0].local.value != c[0].local.value);
}

TEST_CASE("winner channel runs through the simulated path") {
  auto cfg = base_config();
  cfg.channel.kind = ChannelKind::WinnerLognormal;
  const MetricEvaluator ev(cfg, {10, 300, LtSource::Auto});
  CHECK(ev.method() == EstimateMethod::FullMonteCarlo);
  const auto p = ev.evaluate(std::vector<double>{0.01, 1.0});
  CHECK(p[0].local.value >= p[1].local.value);
  CHECK_THROWS_AS(MetricEvaluator(cfg, {10, 300, LtSource::ClosedForm}), std::invalid_argument);
}

TEST_CASE("campbell identity: zero rate threshold and agreement") {
  auto cfg = base_config();
  cfg.simulation.window_factor = 6.0;
  const auto chk = campbell_identity_check(cfg, 3.0 * cfg.parent.delta, 0.05, {11, 300, LtSource::Auto});
  CHECK(chk.direct_mean > 0.0);
  CHECK(chk.z_score < 3.0);
  auto empty = cfg;
  empty.lambda_u = 0.0;
  const auto zero = campbell_identity_check(empty, 3.0 * cfg.parent.delta, 0.05, {11, 50, LtSource::Auto});
  CHECK(zero.direct_mean == 0.0);
  CHECK(zero.palm_mean == 0.0);
  CHECK(zero.discrepancy == 0.0);
}

TEST_CASE("event-level simulation: served requests never exceed the bound") {
  auto cfg = base_config();
  cfg.simulation.window_factor = 6.0;
  const std::vector<double> rates{1e-4, 0.1, 1.0};
  const auto p = event_metrics(cfg, rates, {12, 400, LtSource::Auto}, SlotAccounting::Actual);
  const auto b = metric_bounds(cfg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i].local.value <= b.local_upper + 3.0 * p[i].local.std_error);
    if (i > 0) CHECK(p[i].local.value <= p[i - 1].local.value);
  }
}

}
