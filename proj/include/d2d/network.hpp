#pragma once

#include <cstdint>
#include <vector>

#include "d2d/cluster.hpp"
#include "d2d/config.hpp"
#include "d2d/geometry.hpp"
#include "d2d/rng.hpp"

namespace d2d {

/// How slots left empty by an interfering cluster are treated.
enum class SlotAccounting {
  WorstCase,  // every slot occupied (fictitious uniform transmitter), fresh fading per sub-slot
  Actual,     // empty slots silent; a transmitter repeated across sub-slots keeps its fading
};

/// Every cluster of a network sample with its marks and slot plan.
struct NetworkRealization {
  std::vector<ClusterMarks> clusters;
  std::vector<SlotPlan> plans;
};

NetworkRealization realize_network(const NetworkConfig& cfg, const PointSet& centers, int max_matches,
                                   RandomStream& rng);

/// Outcome of one cluster's block.
struct ClusterOutcome {
  int requests = 0;
  int matched = 0;
  int scheduled = 0;
  /// (1/W) log2(1 + SIR) of each scheduled request; the request is served at
  /// attempted rate R iff R is strictly below it.
  std::vector<double> achievable_rates;

  int served(double rate) const;
};

/// Runs the target cluster's block against every other cluster whose center
/// lies within `truncation` of the target's center. Link gains are drawn from `fading`.
ClusterOutcome evaluate_cluster(const NetworkRealization& net, std::size_t target, const NetworkConfig& cfg,
                                double truncation, SlotAccounting accounting, RandomStream& fading);

/// Palm network: a typical cluster at the origin (index 0) plus the parent
/// process seen from it, inside the configured simulation window.
NetworkRealization sample_palm_network(const NetworkConfig& cfg, int max_matches, RandomStream& rng);

}  // namespace d2d
