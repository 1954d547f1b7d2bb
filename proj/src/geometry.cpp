#include "d2d/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace d2d {

Window::Window(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw std::invalid_argument("Window: radius must be positive");
}

double Window::area() const { return std::numbers::pi * radius * radius; }

void ParentProcess::validate() const {
  if (!(delta > 0.0)) throw std::invalid_argument("parent process: delta must be positive");
  if (kind == ParentKind::MaternII && !(lambda > 0.0))
    throw std::invalid_argument("parent process: Matern lambda must be positive");
}

Point uniform_in_disc(double radius, RandomStream& rng) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

PointSet sample_poisson_pp(double lambda, const Window& window, RandomStream& rng) {
  if (lambda < 0.0) throw std::invalid_argument("sample_poisson_pp: negative intensity");
  PointSet points;
  if (lambda == 0.0) return points;
  std::poisson_distribution<long> count_dist(lambda * window.area());
  const long n = count_dist(rng);
  points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) points.push_back(window.center + uniform_in_disc(window.radius, rng));
  return points;
}

namespace {

struct Proposal {
  Point position;
  double mark;
};

// Bucket grid with cells of side `cell` covering the square around a disc.
class CellIndex {
 public:
  CellIndex(const std::vector<Proposal>& proposals, Point center, double half_width, double cell)
      : origin_{center.x - half_width, center.y - half_width},
        cell_(cell),
        side_(std::max<long>(1, static_cast<long>(std::ceil(2.0 * half_width / cell)))) {
    const std::size_t cells = static_cast<std::size_t>(side_ * side_);
    start_.assign(cells + 1, 0);
    std::vector<std::size_t> cell_of(proposals.size());
    for (std::size_t i = 0; i < proposals.size(); ++i) {
      cell_of[i] = cell_id(proposals[i].position);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) start_[c + 1] += start_[c];
    members_.resize(proposals.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < proposals.size(); ++i) members_[fill[cell_of[i]]++] = i;
  }

  template <class F>
  void for_neighbors(Point p, F&& f) const {
    const long cx = coord(p.x - origin_.x);
    const long cy = coord(p.y - origin_.y);
    for (long dy = -1; dy <= 1; ++dy) {
      const long y = cy + dy;
      if (y < 0 || y >= side_) continue;
      for (long dx = -1; dx <= 1; ++dx) {
        const long x = cx + dx;
        if (x < 0 || x >= side_) continue;
        const std::size_t c = static_cast<std::size_t>(y * side_ + x);
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) f(members_[k]);
      }
    }
  }

 private:
  long coord(double offset) const {
    return std::clamp<long>(static_cast<long>(std::floor(offset / cell_)), 0, side_ - 1);
  }
  std::size_t cell_id(Point p) const {
    return static_cast<std::size_t>(coord(p.y - origin_.y) * side_ + coord(p.x - origin_.x));
  }

  Point origin_;
  double cell_;
  long side_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> members_;
};

// Keeps proposal i iff no proposal within delta has a smaller mark; equal
// marks are broken by index.
std::vector<bool> thin_by_marks(const std::vector<Proposal>& proposals, Point center,
                                double half_width, double delta) {
  const CellIndex index(proposals, center, half_width, delta);
  const double delta_sq = delta * delta;
  std::vector<bool> keep(proposals.size(), true);
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const Proposal& p = proposals[i];
    bool dominated = false;
    index.for_neighbors(p.position, [&](std::size_t j) {
      if (dominated || j == i) return;
      const Proposal& q = proposals[j];
      if (norm_squared(q.position - p.position) >= delta_sq) return;
      if (q.mark < p.mark || (q.mark == p.mark && j < i)) dominated = true;
    });
    keep[i] = !dominated;
  }
  return keep;
}

std::vector<Proposal> propose(double lambda, const Window& padded, RandomStream& rng) {
  const PointSet raw = sample_poisson_pp(lambda, padded, rng);
  std::vector<Proposal> proposals;
  proposals.reserve(raw.size() + 1);
  for (const Point& p : raw) proposals.push_back({p, rng.uniform()});
  return proposals;
}

}  // namespace

PointSet sample_matern_ii(const ParentProcess& proc, const Window& window, RandomStream& rng) {
  proc.validate();
  const Window padded(window.center, window.radius + proc.delta);
  const std::vector<Proposal> proposals = propose(proc.lambda, padded, rng);
  const std::vector<bool> keep = thin_by_marks(proposals, padded.center, padded.radius, proc.delta);
  PointSet result;
  for (std::size_t i = 0; i < proposals.size(); ++i)
    if (keep[i] && window.contains(proposals[i].position)) result.push_back(proposals[i].position);
  return result;
}

PointSet sample_matern_ii_palm(const ParentProcess& proc, const Window& window, RandomStream& rng) {
  proc.validate();
  if (window.center != Point{})
    throw std::invalid_argument("sample_matern_ii_palm: window must be centered at the origin");
  // Given retention, the origin's mark has density proportional to
  // exp(-c u) on [0, 1] with c = lambda pi delta^2, and proposals within delta
  // of the origin must carry larger marks.
  const double c = proc.lambda * std::numbers::pi * proc.delta * proc.delta;
  const double v = rng.uniform();
  const double origin_mark = c > 1e-12 ? -std::log1p(v * std::expm1(-c)) / c : v;

  const Window padded(window.center, window.radius + proc.delta);
  std::vector<Proposal> proposals = propose(proc.lambda, padded, rng);
  const double delta_sq = proc.delta * proc.delta;
  std::erase_if(proposals, [&](const Proposal& p) {
    return norm_squared(p.position) < delta_sq && p.mark < origin_mark;
  });
  proposals.insert(proposals.begin(), Proposal{Point{}, origin_mark});

  const std::vector<bool> keep = thin_by_marks(proposals, padded.center, padded.radius, proc.delta);
  PointSet result;
  for (std::size_t i = 1; i < proposals.size(); ++i)
    if (keep[i] && window.contains(proposals[i].position)) result.push_back(proposals[i].position);
  return result;
}

double matern_ii_density(double lambda, double delta) {
  if (lambda < 0.0 || !(delta > 0.0))
    throw std::invalid_argument("matern_ii_density: need lambda >= 0 and delta > 0");
  const double area = std::numbers::pi * delta * delta;
  return -std::expm1(-lambda * area) / area;
}

namespace {

PointSet lattice_in_window(double delta, Point offset, const Window& window) {
  PointSet points;
  const double lo_x = window.center.x - window.radius, hi_x = window.center.x + window.radius;
  const double lo_y = window.center.y - window.radius, hi_y = window.center.y + window.radius;
  const long m0 = static_cast<long>(std::ceil((lo_x - offset.x) / delta));
  const long m1 = static_cast<long>(std::floor((hi_x - offset.x) / delta));
  const long n0 = static_cast<long>(std::ceil((lo_y - offset.y) / delta));
  const long n1 = static_cast<long>(std::floor((hi_y - offset.y) / delta));
  for (long m = m0; m <= m1; ++m)
    for (long n = n0; n <= n1; ++n) {
      const Point p{static_cast<double>(m) * delta + offset.x, static_cast<double>(n) * delta + offset.y};
      if (window.contains(p)) points.push_back(p);
    }
  return points;
}

}  // namespace

PointSet sample_translated_grid(double delta, const Window& window, RandomStream& rng) {
  if (!(delta > 0.0)) throw std::invalid_argument("sample_translated_grid: delta must be positive");
  const Point offset{delta * rng.uniform(), delta * rng.uniform()};
  return lattice_in_window(delta, offset, window);
}

PointSet translated_grid_palm(double delta, const Window& window) {
  if (!(delta > 0.0)) throw std::invalid_argument("translated_grid_palm: delta must be positive");
  PointSet points = lattice_in_window(delta, Point{}, window);
  std::erase(points, Point{});
  return points;
}

double parent_density(const ParentProcess& proc) {
  proc.validate();
  return proc.kind == ParentKind::MaternII ? matern_ii_density(proc.lambda, proc.delta)
                                           : 1.0 / (proc.delta * proc.delta);
}

double min_pairwise_distance(const PointSet& points) {
  double best_sq = std::numeric_limits<double>::infinity();
  // Sort by x and sweep; adequate for test-sized sets.
  PointSet sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](Point a, Point b) { return a.x < b.x; });
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const double dx = sorted[j].x - sorted[i].x;
      if (dx * dx >= best_sq) break;
      best_sq = std::min(best_sq, norm_squared(sorted[j] - sorted[i]));
    }
  return std::sqrt(best_sq);
}

}  // namespace d2d
