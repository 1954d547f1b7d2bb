#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "d2d/geometry.hpp"
#include "d2d/stats.hpp"

using namespace d2d;
using std::numbers::pi;

TEST_SUITE("geometry") {

TEST_CASE("poisson: zero intensity is empty") {
  RandomStream rng(1);
  CHECK(sample_poisson_pp(0.0, Window({0, 0}, 100.0), rng).empty());
}

TEST_CASE("poisson: mean count in a disc of radius 100") {
  Accumulator acc;
  const Window w({0, 0}, 100.0);
  for (int i = 0; i < 10000; ++i) {
    RandomStream rng(2, StreamTag::Generic, i);
    acc.add(static_cast<double>(sample_poisson_pp(0.012, w, rng).size()));
  }
  const double expected = 0.012 * pi * 1e4;
  CHECK(expected == doctest::Approx(376.99).epsilon(1e-4));
  CHECK(std::abs(acc.mean() - expected) < 3.0 * acc.std_error());
}

TEST_CASE("poisson: equidispersion on a unit-area window") {
  Accumulator acc;
  const Window w({0, 0}, 1.0 / std::sqrt(pi));
  for (int i = 0; i < 100000; ++i) {
    RandomStream rng(3, StreamTag::Generic, i);
    acc.add(static_cast<double>(sample_poisson_pp(1.0, w, rng).size()));
  }
  CHECK(acc.mean() == doctest::Approx(1.0).epsilon(0.02));
  CHECK(acc.variance() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("poisson: positions stay in the window") {
  RandomStream rng(4);
  const Window w({10, -5}, 30.0);
  for (Point p : sample_poisson_pp(0.05, w, rng)) CHECK(w.contains(p));
}

TEST_CASE("matern density formula") {
  CHECK(matern_ii_density(0.0, 100.0) == 0.0);
  CHECK(matern_ii_density(1e3, 100.0) == doctest::Approx(3.1831e-5).epsilon(1e-4));
  CHECK(matern_ii_density(2e-4, 100.0) == doctest::Approx(3.1772e-5).epsilon(1e-4));
  CHECK_THROWS_AS(matern_ii_density(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("matern: sparse limit keeps nearly everything") {
  // lambda pi delta^2 = 3.1e-4: retention probability about 0.9997
  const ParentProcess proc{ParentKind::MaternII, 1e-4, 1.0};
  CHECK(matern_ii_density(proc.lambda, proc.delta) / proc.lambda == doctest::Approx(1.0).epsilon(1e-3));
  RandomStream rng(5);
  const auto pts = sample_matern_ii(proc, Window({0, 0}, 1000.0), rng);
  CHECK(pts.size() > 250);
  CHECK(min_pairwise_distance(pts) >= 1.0);
}

TEST_CASE("matern: hard core on every draw") {
  const ParentProcess proc{ParentKind::MaternII, 1e-3, 100.0};
  for (int i = 0; i < 20; ++i) {
    RandomStream rng(6, StreamTag::Generic, i);
    CHECK(min_pairwise_distance(sample_matern_ii(proc, Window({0, 0}, 1500.0), rng)) >= 100.0);
    RandomStream palm(6, StreamTag::Network, i);
    const auto around = sample_matern_ii_palm(proc, Window({0, 0}, 1500.0), palm);
    CHECK(min_pairwise_distance(around) >= 100.0);
    for (Point p : around) CHECK(norm(p) >= 100.0);
  }
}

TEST_CASE("matern: empirical density within 1% (lambda=1e-3, delta=100, radius 2000)") {
  const ParentProcess proc{ParentKind::MaternII, 1e-3, 100.0};
  const Window w({0, 0}, 2000.0);
  Accumulator acc;
  for (int i = 0; i < 200; ++i) {
    RandomStream rng(7, StreamTag::Generic, i);
    acc.add(static_cast<double>(sample_matern_ii(proc, w, rng).size()) / w.area());
  }
  const double formula = matern_ii_density(proc.lambda, proc.delta);
  CHECK(std::abs(acc.mean() / formula - 1.0) < 0.01);
  CHECK(std::abs(acc.mean() - formula) < 3.0 * acc.std_error());
}

TEST_CASE("matern: no retention bias near the window edge") {
  // equal-area central disc and boundary ring of width < delta
  const ParentProcess proc{ParentKind::MaternII, 5e-4, 50.0};
  const double radius = 400.0;
  const double inner = radius * std::sqrt(0.5) * 0.55;
  const double ring_in = std::sqrt(radius * radius - inner * inner);
  REQUIRE(radius - ring_in < proc.delta);
  Accumulator centre, edge;
  for (int i = 0; i < 1500; ++i) {
    RandomStream rng(8, StreamTag::Generic, i);
    int c = 0, e = 0;
    for (Point p : sample_matern_ii(proc, Window({0, 0}, radius), rng)) {
      const double r = norm(p);
      c += r < inner;
      e += r >= ring_in;
    }
    centre.add(c);
    edge.add(e);
  }
  const double se = std::hypot(centre.std_error(), edge.std_error());
  CHECK(std::abs(centre.mean() - edge.mean()) < 3.0 * se);
}

TEST_CASE("matern palm: neighbour counts match stationary typical points") {
  // Typical-point neighbours from stationary samples versus the Palm sampler.
  const ParentProcess proc{ParentKind::MaternII, 2e-4, 100.0};
  const double r1 = 100.0, r2 = 150.0;
  Accumulator stationary;
  for (int i = 0; i < 150; ++i) {
    RandomStream rng(9, StreamTag::Generic, i);
    const auto pts = sample_matern_ii(proc, Window({0, 0}, 1200.0), rng);
    for (Point p : pts) {
      if (norm(p) > 1000.0) continue;
      int n = 0;
      for (Point q : pts) {
        const double d = distance(p, q);
        n += d >= r1 && d < r2;
      }
      stationary.add(n);
    }
  }
  Accumulator palm;
  for (int i = 0; i < 6000; ++i) {
    RandomStream rng(9, StreamTag::Network, i);
    int n = 0;
    for (Point q : sample_matern_ii_palm(proc, Window({0, 0}, 300.0), rng)) {
      const double d = norm(q);
      n += d >= r1 && d < r2;
    }
    palm.add(n);
  }
  // Points of one stationary sample are correlated, so allow a wider band.
  const double se = std::hypot(3.0 * stationary.std_error(), palm.std_error());
  CHECK(std::abs(stationary.mean() - palm.mean()) < 3.0 * se);
  // Clustering beyond the hard core: more neighbours than a Poisson process.
  const double poisson = matern_ii_density(proc.lambda, proc.delta) * pi * (r2 * r2 - r1 * r1);
  CHECK(palm.mean() > poisson);
}

TEST_CASE("grid: spacing and density") {
  RandomStream rng(10);
  const auto pts = sample_translated_grid(50.0, Window({0, 0}, 500.0), rng);
  CHECK(min_pairwise_distance(pts) == doctest::Approx(50.0));
  CHECK(std::abs(static_cast<double>(pts.size()) - pi * 500.0 * 500.0 / 2500.0) < 25.0);

  Accumulator acc;
  const Window big({0, 0}, 5000.0);
  for (int i = 0; i < 20; ++i) {
    RandomStream r(11, StreamTag::Generic, i);
    acc.add(static_cast<double>(sample_translated_grid(50.0, big, r).size()) / big.area());
  }
  CHECK(acc.mean() == doctest::Approx(1.0 / 2500.0).epsilon(0.01));
}

TEST_CASE("grid: nearest point to the window centre is uniform over a cell") {
  Accumulator x, y;
  for (int i = 0; i < 20000; ++i) {
    RandomStream rng(12, StreamTag::Generic, i);
    const auto pts = sample_translated_grid(10.0, Window({0, 0}, 30.0), rng);
    // lattice points in [0, 10)^2 carry the offset
    for (Point p : pts)
      if (p.x >= 0 && p.x < 10 && p.y >= 0 && p.y < 10) {
        x.add(p.x);
        y.add(p.y);
      }
  }
  CHECK(x.count == 20000);
  CHECK(std::abs(x.mean() - 5.0) < 3.0 * x.std_error());
  CHECK(std::abs(y.mean() - 5.0) < 3.0 * y.std_error());
  CHECK(x.variance() == doctest::Approx(100.0 / 12.0).epsilon(0.05));
}

TEST_CASE("grid palm excludes the origin") {
  const auto pts = translated_grid_palm(50.0, Window({0, 0}, 120.0));
  CHECK(pts.size() == 20);  // 21 lattice points within 120 of the origin, origin removed
  for (Point p : pts) CHECK(norm(p) >= 50.0);
}

TEST_CASE("parent density per kind") {
  CHECK(parent_density({ParentKind::TranslatedGrid, 0.0, 50.0}) == doctest::Approx(4e-4));
  CHECK(parent_density({ParentKind::MaternII, 2e-4, 100.0}) == doctest::Approx(matern_ii_density(2e-4, 100.0)));
  CHECK_THROWS(ParentProcess{ParentKind::MaternII, 0.0, 100.0}.validate());
  CHECK_THROWS(ParentProcess{ParentKind::MaternII, 1.0, -1.0}.validate());
}

TEST_CASE("uniform in disc: radius squared is uniform") {
  RandomStream rng(13);
  Accumulator r2;
  for (int i = 0; i < 50000; ++i) {
    const Point p = uniform_in_disc(20.0, rng);
    REQUIRE(norm(p) <= 20.0);
    r2.add(norm_squared(p) / 400.0);
  }
  CHECK(std::abs(r2.mean() - 0.5) < 3.0 * r2.std_error());
  CHECK(r2.variance() == doctest::Approx(1.0 / 12.0).epsilon(0.03));
}

}
