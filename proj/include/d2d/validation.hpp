#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/interference.hpp"

namespace d2d {

struct DensityCheck {
  double lambda = 0.0;
  double delta = 0.0;
  double empirical = 0.0;  // mean retained count / window area
  double std_error = 0.0;
  double formula = 0.0;
  double relative_error = 0.0;
};

/// Empirical Matérn II density over `replicates` windows of radius window_factor * delta.
DensityCheck matern_density_check(double lambda, double delta, double window_factor, std::size_t replicates,
                                  std::uint64_t seed);

struct MatchCheck {
  double closed_form = 0.0;
  double empirical = 0.0;  // sum N_m / sum N_r over fully sampled clusters
  double std_error = 0.0;
};

MatchCheck match_probability_check(const NetworkConfig& cfg, std::size_t clusters, std::uint64_t seed);

struct SlotRateDominance {
  std::size_t instances = 0;
  std::size_t violations = 0;          // exact rate below the bound
  std::size_t strict_failures = 0;     // distinct phases but no strict gap
  std::size_t distinct_instances = 0;  // instances whose phases differ
};

/// Random (gain, phase set, n1) instances comparing the exact time-shared
/// rate with the averaged-interference bound.
SlotRateDominance slot_rate_dominance_check(std::size_t instances, std::uint64_t seed);

struct LtComparison {
  std::vector<double> etas;
  std::vector<double> worst_case;  // LT with every B = 1
  std::vector<double> random;      // LT with random B
  std::vector<double> diff_se;     // standard error of the paired difference
};

/// Paired simulated LT of I(d, n1) under both B modes over the same fields.
LtComparison b_mode_comparison(const NetworkConfig& cfg, const SlotCountLaw& law, int n1, Point d,
                               std::span<const double> etas, std::size_t replicates, std::uint64_t seed);

}  // namespace d2d
