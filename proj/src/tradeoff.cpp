#include "d2d/tradeoff.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace d2d {

void SweepGrid::validate() const {
  if (cluster_radii.empty() || rates.empty() || clearance_factors.empty() || constraints.empty())
    throw std::invalid_argument("sweep grid: every axis needs at least one value");
  for (double r : cluster_radii)
    if (!(r > 0.0)) throw std::invalid_argument("sweep grid: cluster radii must be positive");
  for (double r : rates)
    if (!(r >= 0.0)) throw std::invalid_argument("sweep grid: rates must be >= 0");
  for (double f : clearance_factors)
    if (!(f >= 1.0)) throw std::invalid_argument("sweep grid: clearance factors must be >= 1");
  for (double l : proposal_intensities)
    if (!(l > 0.0)) throw std::invalid_argument("sweep grid: intensities must be positive");
}

std::vector<GridEvaluation> evaluate_grid(const SweepGrid& grid, const NetworkConfig& base,
                                          const MetricOptions& options) {
  grid.validate();
  const bool matern = base.parent.kind == ParentKind::MaternII;
  if (matern && grid.proposal_intensities.empty())
    throw std::invalid_argument("sweep grid: Matern sweeps need proposal intensities");
  const std::vector<double> intensities = matern ? grid.proposal_intensities : std::vector<double>{base.parent.lambda};

  std::vector<GridEvaluation> out;
  for (double radius : grid.cluster_radii) {
    NetworkConfig cfg = base;
    cfg.cluster_radius = radius;
    // n_m,max and the slot law depend on the clusters only; compute them once per radius.
    std::optional<ClusterStatistics> stats;
    for (double factor : grid.clearance_factors) {
      for (double lambda : intensities) {
        cfg.parent.delta = factor * 2.0 * radius;
        cfg.parent.lambda = lambda;
        const double density = cfg.parent_density();
        if (density < grid.density_floor) continue;
        if (!stats) stats = cluster_statistics(cfg, options.seed);
        GridEvaluation e;
        e.cluster_radius = radius;
        e.lambda = lambda;
        e.delta = cfg.parent.delta;
        e.parent_density = density;
        e.metrics = MetricEvaluator(cfg, options, *stats).evaluate(grid.rates);
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

bool meets_floor(const MetricEstimate& estimate, double floor, double sigmas) {
  if (floor <= 0.0) return true;
  return estimate.value - sigmas * estimate.std_error >= floor;
}

namespace {

using Pick = std::function<const MetricEstimate&(const MetricPoint&)>;

std::vector<TradeoffPoint> optimize(const std::vector<GridEvaluation>& evaluations,
                                    const std::vector<double>& constraints, const Pick& objective,
                                    const Pick& constrained) {
  std::vector<TradeoffPoint> frontier;
  for (double floor : constraints) {
    TradeoffPoint best;
    best.constraint = floor;
    for (const GridEvaluation& e : evaluations) {
      for (const MetricPoint& p : e.metrics) {
        if (!meets_floor(constrained(p), floor)) continue;
        const MetricEstimate& value = objective(p);
        if (best.feasible && value.value <= best.objective.value) continue;
        best.feasible = true;
        best.objective = value;
        best.cluster_radius = e.cluster_radius;
        best.rate = p.rate;
        best.lambda = e.lambda;
        best.delta = e.delta;
        best.parent_density = e.parent_density;
        best.local = p.local;
        best.average_rate = p.average_rate;
      }
    }
    frontier.push_back(best);
  }
  return frontier;
}

const MetricEstimate& global_of(const MetricPoint& p) { return p.global; }
const MetricEstimate& local_of(const MetricPoint& p) { return p.local; }
const MetricEstimate& rate_of(const MetricPoint& p) { return p.average_rate; }

}  // namespace

std::vector<TradeoffPoint> optimize_global(const std::vector<GridEvaluation>& evaluations,
                                           const std::vector<double>& constraints) {
  return optimize(evaluations, constraints, global_of, rate_of);
}

std::vector<TradeoffPoint> optimize_local(const std::vector<GridEvaluation>& evaluations,
                                          const std::vector<double>& constraints) {
  return optimize(evaluations, constraints, local_of, rate_of);
}

std::vector<TradeoffPoint> optimize_local_global(const std::vector<GridEvaluation>& evaluations,
                                                 const std::vector<double>& constraints) {
  return optimize(evaluations, constraints, global_of, local_of);
}

std::vector<TradeoffPoint> optimize_global(const SweepGrid& grid, const NetworkConfig& base,
                                           const MetricOptions& options) {
  return optimize_global(evaluate_grid(grid, base, options), grid.constraints);
}

std::vector<TradeoffPoint> optimize_local(const SweepGrid& grid, const NetworkConfig& base,
                                          const MetricOptions& options) {
  return optimize_local(evaluate_grid(grid, base, options), grid.constraints);
}

std::vector<TradeoffPoint> optimize_local_global(const SweepGrid& grid, const NetworkConfig& base, double rate,
                                                 const MetricOptions& options) {
  SweepGrid fixed = grid;
  fixed.rates = {rate};
  return optimize_local_global(evaluate_grid(fixed, base, options), grid.constraints);
}

}  // namespace d2d
