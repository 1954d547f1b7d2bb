#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/content.hpp"
#include "d2d/geometry.hpp"
#include "d2d/rng.hpp"

namespace d2d {

/// One realized cluster: user positions (relative to the center), caches,
/// requests and the match structure.
struct ClusterMarks {
  Point center;
  PointSet caching_positions;  // S
  PointSet request_positions;  // D
  CacheAssignment caches;
  std::vector<VideoId> requests;
  MatchResult matches;

  int caching_users() const { return static_cast<int>(caching_positions.size()); }
  int requesting_users() const { return static_cast<int>(request_positions.size()); }
  int match_count() const { return matches.matched; }
};

/// User and match counts of a cluster without positions or cache contents.
struct MatchCounts {
  int caching_users = 0;
  int requesting_users = 0;
  int matched = 0;
};

/// Reusable cluster sampler; builds the content samplers once.
class ClusterSampler {
 public:
  explicit ClusterSampler(const NetworkConfig& cfg);

  ClusterMarks sample(Point center, RandomStream& rng) const;

  /// Same law for (N_u, N_r, N_m) as sample(), drawn in O(N_r): only the
  /// cache occupancy of the requested videos is generated, by sequential
  /// binomial splitting of the N_u M cache entries.
  MatchCounts sample_counts(RandomStream& rng) const;

 private:
  double radius_;
  double mean_caching_;
  double mean_requesting_;
  int cache_size_;
  std::vector<double> cache_pmf_;
  DiscreteSampler request_sampler_;
  DiscreteSampler cache_sampler_;
};

ClusterMarks sample_cluster(const NetworkConfig& cfg, Point center, RandomStream& rng);

/// 2^ceil(log2 n) and 2^floor(log2 n) for n >= 1.
int slots_high(int matches);
int slots_low(int matches);

/// Power-of-two slot count for n matched requests: W_L when
/// (n - W_L) / (W_H - W_L) < eps, else W_H. Throws std::domain_error for n <= 0.
int slot_count(int matches, double eps);

struct SlotAssignment {
  int transmitter = 0;  // index into the cluster's caching users
  int receiver = 0;     // index into the cluster's requests
};

struct SlotPlan {
  int slots = 0;  // W; 0 when nothing is scheduled
  std::vector<std::optional<SlotAssignment>> assignments;
  std::vector<int> dropped;  // matched requests left unserved (cap and W_L)

  int scheduled() const;
};

/// Slot allocation of the exchange protocol. Matched requests beyond
/// max_matches are dropped first, uniformly at random.
SlotPlan schedule(const ClusterMarks& marks, double eps, int max_matches, RandomStream& rng);

/// Smallest power of two n with empirical P(N_m > n) < 1e-3 over `replicates`
/// cluster draws.
int default_max_matches(const NetworkConfig& cfg, std::uint64_t seed, int replicates = 10000);

/// The configured n_m,max, or the default when the config leaves it at 0.
int resolve_max_matches(const NetworkConfig& cfg, std::uint64_t seed);

}  // namespace d2d
