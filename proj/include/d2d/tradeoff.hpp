#pragma once

#include <vector>

#include "d2d/config.hpp"
#include "d2d/metrics.hpp"

namespace d2d {

/// Parameter grid of a trade-off sweep. The clearance is delta = f * 2 R_c
/// with f >= 1, so delta >= 2 R_c at every point. For a translated-grid parent
/// the intensity axis is ignored.
struct SweepGrid {
  std::vector<double> cluster_radii;
  std::vector<double> rates;
  std::vector<double> proposal_intensities;
  std::vector<double> clearance_factors{1.0};
  std::vector<double> constraints;  // average-rate floors r, or local-metric floors t_c
  double density_floor = 0.0;       // lambda_t; only points with lambda_p >= lambda_t are admitted

  void validate() const;
};

/// One (R_c, lambda, delta) point with its metrics at every grid rate.
struct GridEvaluation {
  double cluster_radius = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double parent_density = 0.0;
  std::vector<MetricPoint> metrics;
};

/// Evaluates every admitted grid point once; the optimizers below share the result.
std::vector<GridEvaluation> evaluate_grid(const SweepGrid& grid, const NetworkConfig& base,
                                          const MetricOptions& options);

struct TradeoffPoint {
  double constraint = 0.0;
  bool feasible = false;
  MetricEstimate objective;  // zero when infeasible
  double cluster_radius = 0.0;
  double rate = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double parent_density = 0.0;
  MetricEstimate local;
  MetricEstimate average_rate;
};

/// Feasibility under noise: estimate - sigmas * std_error >= floor. Floors <= 0 are vacuous.
bool meets_floor(const MetricEstimate& estimate, double floor, double sigmas = 3.0);

/// max T_G subject to R bar >= r, for each r in grid.constraints.
std::vector<TradeoffPoint> optimize_global(const std::vector<GridEvaluation>& evaluations,
                                           const std::vector<double>& constraints);
/// max T_L subject to R bar >= r (the density floor is applied by evaluate_grid).
std::vector<TradeoffPoint> optimize_local(const std::vector<GridEvaluation>& evaluations,
                                          const std::vector<double>& constraints);
/// max T_G subject to T_L >= t_c at the fixed attempted rate evaluated in `evaluations`.
std::vector<TradeoffPoint> optimize_local_global(const std::vector<GridEvaluation>& evaluations,
                                                 const std::vector<double>& constraints);

std::vector<TradeoffPoint> optimize_global(const SweepGrid& grid, const NetworkConfig& base,
                                           const MetricOptions& options);
std::vector<TradeoffPoint> optimize_local(const SweepGrid& grid, const NetworkConfig& base,
                                          const MetricOptions& options);
std::vector<TradeoffPoint> optimize_local_global(const SweepGrid& grid, const NetworkConfig& base, double rate,
                                                 const MetricOptions& options);

}  // namespace d2d
