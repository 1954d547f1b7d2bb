#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/interference.hpp"
#include "d2d/network.hpp"
#include "d2d/stats.hpp"

namespace d2d {

/// Where the conditional success probability of the typical link comes from.
enum class LtSource {
  Auto,        // far-field approximation for Matérn + Rayleigh, simulation otherwise
  ClosedForm,  // far-field Poisson approximation of the interference LT (Rayleigh only)
  MonteCarlo,  // simulated Palm interference field
};

struct MetricOptions {
  std::uint64_t seed = 0;
  std::size_t replicates = 2000;
  LtSource source = LtSource::Auto;
};

/// Per-cluster statistics that depend on the cluster law and strategy only
/// (not on the parent process): n_m,max and the slot-count law.
struct ClusterStatistics {
  int max_matches = 1;
  SlotCountLaw law;
};

ClusterStatistics cluster_statistics(const NetworkConfig& cfg, std::uint64_t seed);

/// Metrics at one attempted rate.
struct MetricPoint {
  double rate = 0.0;
  MetricEstimate local;         // T_L
  MetricEstimate global;        // T_G
  MetricEstimate average_rate;  // R bar
};

/// Evaluates T_L, T_G and R bar for the slot-allocation protocol. Each
/// replicate draws the origin cluster's counts, a uniform source S and
/// destination D, and (for the simulated source) an independent Palm
/// interference field; every rate reuses the same replicates.
///
/// T_L is estimated as sum(min(N_m, W) F) / sum(N_r), with F the conditional
/// probability that |g_SD|^2 exceeds (I(D, W) + N)(2^{W R} - 1) / P.
class MetricEvaluator {
 public:
  MetricEvaluator(const NetworkConfig& cfg, const MetricOptions& options);
  /// Reuses statistics computed for another config with the same clusters.
  MetricEvaluator(const NetworkConfig& cfg, const MetricOptions& options, ClusterStatistics stats);

  std::vector<MetricPoint> evaluate(std::span<const double> rates) const;

  int max_matches() const { return max_matches_; }
  const SlotCountLaw& slot_law() const { return law_; }
  EstimateMethod method() const;

 private:
  NetworkConfig cfg_;
  MetricOptions options_;
  int max_matches_;
  SlotCountLaw law_;
  bool closed_form_;
};

std::vector<MetricPoint> evaluate_metrics(const NetworkConfig& cfg, std::span<const double> rates,
                                          const MetricOptions& options);

MetricEstimate local_metric(const NetworkConfig& cfg, double rate, const MetricOptions& options);
MetricEstimate global_metric(const NetworkConfig& cfg, double rate, const MetricOptions& options);
MetricEstimate average_rate(const NetworkConfig& cfg, double rate, const MetricOptions& options);

struct MetricBounds {
  double match_probability = 0.0;
  double local_upper = 0.0;   // p_M
  double global_upper = 0.0;  // lambda_p pi R_c^2 p_M
};

MetricBounds metric_bounds(const NetworkConfig& cfg);

/// Brute-force counterpart of MetricEvaluator: full Palm networks with every
/// cluster scheduled, served requests counted link by link.
std::vector<MetricPoint> event_metrics(const NetworkConfig& cfg, std::span<const double> rates,
                                       const MetricOptions& options, SlotAccounting accounting);

struct CampbellCheck {
  double direct_mean = 0.0;  // E[served requests of clusters centered in K]
  double direct_se = 0.0;
  double palm_mean = 0.0;    // lambda_p |K| E0[served requests of the typical cluster]
  double palm_se = 0.0;
  double discrepancy = 0.0;  // |direct - palm| / palm (0 when both vanish)
  double z_score = 0.0;      // |direct - palm| / combined standard error
};

/// Served-request count in the disc K (centered at the origin, clusters
/// counted by center) from stationary networks versus lambda_p |K| times the
/// typical-cluster mean. Both sides use the same interference truncation.
CampbellCheck campbell_identity_check(const NetworkConfig& cfg, double region_radius, double rate,
                                      const MetricOptions& options);

}  // namespace d2d
