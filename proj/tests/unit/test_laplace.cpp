#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "d2d/laplace.hpp"

using namespace d2d;
using std::numbers::pi;

namespace {

// J_1 at the origin has a closed form for alpha = 4.
double j1_closed(double s) { return pi * std::sqrt(s) * (pi / 2.0 - std::atan(1.0 / std::sqrt(s))); }

// Independent oracle: composite Simpson over theta and t = 1/r on [0, 1].
double j_simpson(double s, double rho, double alpha, int k) {
  const int nt = 4000, nth = 400;
  auto f = [&](double t, double th) {
    if (t == 0.0) return 0.0;
    const double r = 1.0 / t;
    const double dx = r * std::cos(th) - rho, dy = r * std::sin(th);
    const double l = std::pow(dx * dx + dy * dy, -alpha / 2.0);
    return (1.0 - std::pow(1.0 + s * l / k, -k)) / (t * t * t);
  };
  auto w = [](int i, int n) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  double total = 0.0;
  for (int a = 0; a <= nth; ++a) {
    const double th = pi * a / nth;
    double inner = 0.0;
    for (int b = 0; b <= nt; ++b) inner += w(b, nt) * f(static_cast<double>(b) / nt, th);
    total += w(a, nth) * inner / (3.0 * nt);
  }
  return 2.0 * total * pi / (3.0 * nth);  // symmetric in theta
}

NetworkConfig fig4_like() {
  NetworkConfig cfg;
  cfg.parent = {ParentKind::MaternII, 2e-4, 100.0};
  cfg.cluster_radius = 50.0;
  cfg.lambda_u = 0.012;
  cfg.lambda_r = 0.003;
  cfg.content = ContentConfig::zipf(500, 6, 0.6);
  return cfg;
}

SlotCountLaw spread_law() {
  SlotCountLaw law;
  law.empty_probability = 0.1;
  law.pmf = {0.05, 0.1, 0.15, 0.2, 0.25, 0.15, 0.1};
  return law;
}

}  // namespace

TEST_SUITE("laplace") {

TEST_CASE("closed-form oracle values") {
  CHECK(j1_closed(1.0) == doctest::Approx(pi * pi / 4.0));
  CHECK(j1_closed(1e10) == doctest::Approx(493477.08).epsilon(1e-7));
}

TEST_CASE("shot-noise integral at the origin against the closed form") {
  for (double s : {1e-6, 1e-3, 0.3, 1.0, 7.0, 1e3, 1e6, 1e10})
    CHECK(shot_noise_integral(s, 0.0, 4.0, 1) == doctest::Approx(j1_closed(s)).epsilon(1e-6));
}

TEST_CASE("shot-noise integral off-centre and for k > 1 against Simpson") {
  for (double rho : {0.0, 0.2, 0.35, 0.5})
    for (int k : {1, 4})
      for (double s : {0.05, 2.0, 300.0}) {
        const double direct = shot_noise_integral(s, rho, 4.0, k);
        CHECK(direct == doctest::Approx(j_simpson(s, rho, 4.0, k)).epsilon(2e-5));
      }
  // alpha = 3: the 1/r substitution is not smooth enough for Simpson; value from adaptive polar quadrature
  CHECK(shot_noise_integral(1.0, 0.3, 3.0, 2) == doctest::Approx(5.5405088).epsilon(1e-6));
}

TEST_CASE("shot-noise integral properties") {
  CHECK(shot_noise_integral(0.0, 0.2, 4.0, 1) == 0.0);
  // more transmitters sharing the power lower the per-cluster success term
  CHECK(shot_noise_integral(5.0, 0.0, 4.0, 8) > shot_noise_integral(5.0, 0.0, 4.0, 1));
  double last = 0.0;
  for (double s = 1e-3; s < 1e4; s *= 3.0) {
    const double j = shot_noise_integral(s, 0.25, 4.0, 2);
    CHECK(j > last);
    last = j;
  }
  CHECK(shot_noise_integral(3.0, 0.45, 4.0, 1) > shot_noise_integral(3.0, 0.0, 4.0, 1));
}

TEST_CASE("table interpolation matches direct quadrature") {
  const auto& table = ShotNoiseTable::get(4.0, 2);
  double worst = 0.0;
  for (double ls = -7.95; ls < 9.9; ls += 0.73)
    for (double rho : {0.0, 0.07, 0.23, 0.41, 0.5}) {
      const double s = std::pow(10.0, ls);
      const double direct = shot_noise_integral(s, rho, 4.0, 2);
      worst = std::max(worst, std::abs(table(s, rho) / direct - 1.0));
    }
  CHECK(worst < 2e-5);
  // beyond the table: s^(2/alpha) growth
  CHECK(table(1e12, 0.0) == doctest::Approx(shot_noise_integral(1e12, 0.0, 4.0, 2)).epsilon(1e-4));
  CHECK(table(1e-10, 0.1) == doctest::Approx(shot_noise_integral(1e-10, 0.1, 4.0, 2)).epsilon(1e-4));
  // off-table rho falls back to quadrature
  CHECK(table(3.0, 0.7) == doctest::Approx(shot_noise_integral(3.0, 0.7, 4.0, 2)).epsilon(1e-9));
}

TEST_CASE("approximation: trivial values") {
  const auto cfg = fig4_like();
  const auto law = spread_law();
  const LaplaceApproximation lt(cfg, law, 8);
  CHECK(lt(0.0, 0.0) == 1.0);
  SlotCountLaw silent;
  silent.empty_probability = 1.0;
  silent.pmf = {1.0};
  CHECK(LaplaceApproximation(cfg, silent, 8)(1e9, 20.0) == 1.0);
  CHECK(lt_interference_approx(0.0, {10, 0}, 8, cfg, law) == 1.0);
}

TEST_CASE("approximation: tabulated agrees with direct quadrature") {
  const auto cfg = fig4_like();
  const auto law = spread_law();
  const LaplaceApproximation tab(cfg, law, 8, true);
  for (double eta : {1e5, 1e7, 3e8, 1e9})
    for (double d : {0.0, 35.0}) {
      const double direct = lt_interference_approx(eta, {d, 0}, 8, cfg, law);
      CHECK(tab(eta, d) == doctest::Approx(direct).epsilon(1e-5));
    }
}

TEST_CASE("approximation: equals the exponent formula") {
  const auto cfg = fig4_like();
  const auto law = spread_law();
  const double eta = 2e8, rho = 0.2;
  const double s = eta * std::pow(cfg.parent.delta, -4.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < law.pmf.size(); ++i) {
    const int k = std::max(1, (1 << i) / 8);
    sum += law.pmf[i] * j_simpson(s, rho, 4.0, k);
  }
  const double expected =
      std::exp(-cfg.parent_density() * (1.0 - law.empty_probability) * 1e4 * sum);
  CHECK(lt_interference_approx(eta, {rho * 100.0, 0}, 8, cfg, law) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("approximation: monotone in eta, intensity and offset") {
  auto cfg = fig4_like();
  const auto law = spread_law();
  const LaplaceApproximation lt(cfg, law, 8);
  double last = 1.0;
  for (double eta = 1e4; eta < 1e10; eta *= 2.0) {
    const double v = lt(eta, 10.0);
    CHECK(v <= last);
    CHECK(v > 0.0);
    last = v;
  }
  last = 1.0;
  for (double d = 0.0; d <= 50.0; d += 5.0) {
    const double v = lt(1e8, d);
    CHECK(v <= last + 1e-12);
    last = v;
  }
  auto denser = cfg;
  denser.parent.lambda = 5e-4;
  CHECK(LaplaceApproximation(denser, law, 8)(1e8, 0.0) < lt(1e8, 0.0));
}

TEST_CASE("approximation needs the Rayleigh power-law channel") {
  auto cfg = fig4_like();
  cfg.channel.kind = ChannelKind::WinnerLognormal;
  CHECK_THROWS_AS(LaplaceApproximation(cfg, spread_law(), 8), std::invalid_argument);
}

}
