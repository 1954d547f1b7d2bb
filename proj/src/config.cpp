#include "d2d/config.hpp"

#include <numbers>
#include <stdexcept>

namespace d2d {

void NetworkConfig::validate() const {
  parent.validate();
  if (!(cluster_radius > 0.0)) throw std::invalid_argument("network: cluster radius must be positive");
  if (parent.delta < 2.0 * cluster_radius * (1.0 - 1e-12))
    throw std::invalid_argument("network: clearance delta must be at least 2 R_c");
  if (lambda_u < 0.0 || lambda_r < 0.0) throw std::invalid_argument("network: user densities must be >= 0");
  content.validate();
  channel.validate();
  if (!(strategy.eps >= 0.0 && strategy.eps <= 1.0))
    throw std::invalid_argument("strategy: eps must lie in [0, 1]");
  if (strategy.max_matches < 0) throw std::invalid_argument("strategy: max_matches must be >= 0");
  if (strategy.max_matches > 0 && (strategy.max_matches & (strategy.max_matches - 1)) != 0)
    throw std::invalid_argument("strategy: max_matches must be a power of two");
  if (!(simulation.window_factor >= 2.0))
    throw std::invalid_argument("simulation: window factor must be >= 2");
  if (simulation.law_replicates < 1) throw std::invalid_argument("simulation: law replicates must be >= 1");
}

double NetworkConfig::cluster_area() const {
  return std::numbers::pi * cluster_radius * cluster_radius;
}

}  // namespace d2d
