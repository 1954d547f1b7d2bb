#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "d2d/channel.hpp"
#include "d2d/stats.hpp"

using namespace d2d;

namespace {

ChannelModel winner() {
  ChannelModel m;
  m.kind = ChannelKind::WinnerLognormal;
  return m;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("power-law path loss") {
  ChannelModel m;
  CHECK(path_loss(1.0, m) == 1.0);
  CHECK(path_loss(10.0, m) == doctest::Approx(1e-4));
  CHECK(path_loss(3.0, m) / path_loss(6.0, m) == doctest::Approx(16.0));
  m.path_loss_constant = 2.5;
  CHECK(path_loss(10.0, m) == doctest::Approx(2.5e-4));
  CHECK_THROWS_AS(path_loss(0.0, m), std::domain_error);
}

TEST_CASE("channel validation") {
  ChannelModel m;
  CHECK_NOTHROW(m.validate());
  m.alpha = 2.0;
  CHECK_THROWS(m.validate());
  m = ChannelModel{};
  m.power = 0.0;
  CHECK_THROWS(m.validate());
}

TEST_CASE("rayleigh power: mean, tail and sign") {
  RandomStream rng(1);
  const int n = 1000000;
  double sum = 0.0;
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    const double h = sample_rayleigh_power(rng);
    REQUIRE(h >= 0.0);
    sum += h;
    tail += h > 2.0;
  }
  CHECK(std::abs(sum / n - 1.0) < 0.003);
  const double p = std::exp(-2.0);
  CHECK(p == doctest::Approx(0.1353).epsilon(1e-3));
  CHECK(std::abs(tail / double(n) - p) < 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("los probability") {
  CHECK(los_probability(3.0) == 1.0);
  CHECK(los_probability(5.0) == 1.0);
  CHECK(los_probability(10.0) == doctest::Approx(0.18225).epsilon(1e-4));
  CHECK(los_probability(100.0) == doctest::Approx(0.10000).epsilon(1e-4));
  double last = 1.0;
  for (double d = 5.5; d < 120.0; d += 0.5) {
    const double p = los_probability(d);
    CHECK(p <= last + 1e-12);
    CHECK(p >= 0.0);
    last = p;
  }
  CHECK(los_probability(1e6) >= 0.0);
  CHECK(los_probability(1e6) <= 1.0);
}

TEST_CASE("wall count") {
  CHECK(wall_count(12.0, false) == 2);
  CHECK(wall_count(4.0, false) == 1);
  CHECK(wall_count(12.0, true) == 0);
  CHECK(wall_count(10.0, false) == 2);
}

TEST_CASE("winner dB laws") {
  const WinnerParams p;
  CHECK(intra_cluster_loss_db(10.0, true, 0.0, p) == doctest::Approx(18.7 + 46.8 + 20.0 * std::log10(0.49)));
  CHECK(intra_cluster_loss_db(10.0, true, 0.0, p) == doctest::Approx(59.30).epsilon(1e-4));
  // NLOS at 12 m: two walls
  CHECK(intra_cluster_loss_db(12.0, false, 0.0, p) ==
        doctest::Approx(36.8 * std::log10(12.0) + 43.8 + 23.0 * std::log10(0.49) + 10.0));
  CHECK(inter_cluster_loss_db(100.0, 1, 0.0, p) == doctest::Approx(80.0 + 41.0 + 22.7 * std::log10(0.49) + 28.0));
  CHECK(inter_cluster_loss_db(100.0, 1, 0.0, p) - 28.0 == doctest::Approx(113.96).epsilon(1e-4));
  for (int nb = 1; nb < 5; ++nb)
    CHECK(inter_cluster_loss_db(70.0, nb + 1, 0.0, p) - inter_cluster_loss_db(70.0, nb, 0.0, p) ==
          doctest::Approx(28.0));
  CHECK(intra_cluster_loss_db(10.0, true, 2.5, p) - intra_cluster_loss_db(10.0, true, 0.0, p) ==
        doctest::Approx(2.5));
}

TEST_CASE("winner transmit power") {
  CHECK(winner().transmit_power() == doctest::Approx(std::pow(10.0, 3.2)));
  CHECK(ChannelModel{}.transmit_power() == 1.0);
}

TEST_CASE("winner shadowing is zero mean in dB") {
  const auto m = winner();
  RandomStream rng(2);
  const int n = 1000000;
  const double base = inter_cluster_loss_db(100.0, 1, 0.0, m.winner);
  Accumulator chi;
  for (int i = 0; i < n; ++i) {
    const double g = inter_cluster_gain_winner({0, 0}, {100, 0}, 1, m, rng);
    REQUIRE(g > 0.0);
    chi.add(-10.0 * std::log10(g) - base);
  }
  CHECK(std::abs(chi.mean()) < 3.0 * 7.0 / std::sqrt(double(n)));
  CHECK(std::sqrt(chi.variance()) == doctest::Approx(7.0).epsilon(0.01));
}

TEST_CASE("winner intra gains: replay and ccdf") {
  const auto m = winner();
  RandomStream a(3), b(3);
  for (int i = 0; i < 100; ++i)
    CHECK(intra_cluster_gain_winner({0, 0}, {9, 4}, m, a) == intra_cluster_gain_winner({0, 0}, {9, 4}, m, b));

  // empirical ccdf against the LOS/NLOS mixture
  RandomStream rng(4);
  const double d = 15.0;
  const double t = std::pow(10.0, -8.0);
  const int n = 200000;
  int above = 0;
  for (int i = 0; i < n; ++i) {
    const double g = intra_cluster_gain_winner({0, 0}, {d, 0}, m, rng);
    REQUIRE(g > 0.0);
    above += g > t;
  }
  const double p = intra_gain_ccdf(t, d, m);
  CHECK(p > 0.05);
  CHECK(p < 0.95);
  CHECK(std::abs(above / double(n) - p) < 3.5 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("rayleigh intra law equals the inter law") {
  const ChannelModel m;
  RandomStream a(5), b(5);
  for (int i = 0; i < 1000; ++i)
    CHECK(sample_intra_gain({0, 0}, {3, 4}, m, a) == sample_inter_gain({0, 0}, {3, 4}, 1, m, b));
  CHECK(intra_gain_ccdf(0.0, 5.0, m) == 1.0);
  CHECK(intra_gain_ccdf(1e-3, 5.0, m) == doctest::Approx(std::exp(-1e-3 * 625.0)));
}

TEST_CASE("grid penetration count") {
  CHECK(grid_penetration_count({0, 0}, {50, 0}, 50.0) == 1);
  CHECK(grid_penetration_count({0, 0}, {50, 50}, 50.0) == 1);
  CHECK(grid_penetration_count({0, 0}, {100, -50}, 50.0) == 2);
  CHECK(grid_penetration_count({0, 0}, {10, 0}, 50.0) == 1);
  CHECK(grid_penetration_count({0, 0}, {-250, 100}, 50.0) == 5);
}

}
