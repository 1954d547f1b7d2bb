#pragma once

#include <cmath>
#include <vector>

#include "d2d/rng.hpp"

namespace d2d {

/// A point (or displacement) in the plane, in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double norm_squared(Point p) { return p.x * p.x + p.y * p.y; }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double inf_norm(Point p) { return std::max(std::abs(p.x), std::abs(p.y)); }

/// Disc-shaped simulation window: the finite stand-in for the plane.
struct Window {
  Point center;
  double radius = 1.0;

  Window() = default;
  Window(Point c, double r);

  double area() const;
  bool contains(Point p) const { return norm_squared(p - center) <= radius * radius; }
};

enum class ParentKind { MaternII, TranslatedGrid };

/// Hard-core process of cluster centers. lambda is the Matérn proposal
/// intensity and is ignored for the translated grid, whose spacing is delta.
struct ParentProcess {
  ParentKind kind = ParentKind::MaternII;
  double lambda = 0.0;
  double delta = 1.0;

  void validate() const;
};

using PointSet = std::vector<Point>;

/// Uniform point in the disc of the given radius centered at the origin.
Point uniform_in_disc(double radius, RandomStream& rng);

PointSet sample_poisson_pp(double lambda, const Window& window, RandomStream& rng);

/// Matérn type II thinning of a Poisson(lambda) proposal. Proposals are drawn
/// on the window dilated by delta so points near the edge see their full
/// competition; survivors are clipped to the window.
PointSet sample_matern_ii(const ParentProcess& proc, const Window& window, RandomStream& rng);

/// Matérn II seen from a typical retained point at the origin (Palm version).
/// The origin itself is not included. window must be centered at the origin.
PointSet sample_matern_ii_palm(const ParentProcess& proc, const Window& window, RandomStream& rng);

/// Intensity of retained Matérn II points, (1 - exp(-lambda pi delta^2)) / (pi delta^2).
double matern_ii_density(double lambda, double delta);

/// Square lattice of spacing delta with a uniform random offset in [0, delta)^2.
PointSet sample_translated_grid(double delta, const Window& window, RandomStream& rng);

/// Lattice with a point at the origin, origin excluded.
PointSet translated_grid_palm(double delta, const Window& window);

/// Intensity lambda_p of the parent process.
double parent_density(const ParentProcess& proc);

/// Smallest pairwise distance (infinity for fewer than two points).
double min_pairwise_distance(const PointSet& points);

}  // namespace d2d
