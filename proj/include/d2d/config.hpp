#pragma once

#include "d2d/channel.hpp"
#include "d2d/content.hpp"
#include "d2d/geometry.hpp"

namespace d2d {

struct StrategyConfig {
  double eps = 0.5;     // W_L threshold of the slot-count rule, in [0, 1]
  int max_matches = 0;  // n_m,max; 0 selects the tail-quantile default
};

struct SimulationConfig {
  double window_factor = 40.0;  // simulation window radius in units of delta
  int law_replicates = 10000;   // cluster draws behind slot-count laws and n_m,max
};

/// Every model parameter of one experiment point.
struct NetworkConfig {
  ParentProcess parent;
  double cluster_radius = 1.0;  // R_c
  double lambda_u = 0.0;        // caching-user density
  double lambda_r = 0.0;        // requesting-user density
  ContentConfig content = ContentConfig::zipf(1, 1, 0.0);
  ChannelModel channel;
  StrategyConfig strategy;
  SimulationConfig simulation;

  /// Throws std::invalid_argument on inconsistent parameters (including delta < 2 R_c).
  void validate() const;

  double parent_density() const { return d2d::parent_density(parent); }
  double cluster_area() const;
  double window_radius() const { return simulation.window_factor * parent.delta; }
};

}  // namespace d2d
