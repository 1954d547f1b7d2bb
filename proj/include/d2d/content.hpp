#pragma once

#include <span>
#include <vector>

#include "d2d/rng.hpp"

namespace d2d {

/// Video identifiers are 1-based, in popularity order.
using VideoId = int;
using Cache = std::vector<VideoId>;
/// One cache per caching user; each holds exactly cache_size entries drawn
/// independently (duplicates allowed).
using CacheAssignment = std::vector<Cache>;

/// Zipf popularity: entry v-1 is v^-gamma normalized over v = 1..L.
std::vector<double> zipf_pmf(double gamma, int library_size);

struct ContentConfig {
  int library_size = 1;
  int cache_size = 1;
  double zipf_gamma = 0.0;
  std::vector<double> request_pmf;  // p_V
  std::vector<double> cache_pmf;    // p_A

  /// Zipf requests and caching by the same law (users cache what they watch).
  static ContentConfig zipf(int library_size, int cache_size, double gamma);

  /// Throws std::invalid_argument on malformed pmfs or sizes.
  void validate() const;
};

/// Inverse-cdf sampler over {1, ..., pmf.size()}.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> pmf);
  VideoId operator()(RandomStream& rng) const;
  int size() const { return static_cast<int>(cdf_.size()); }

 private:
  std::vector<double> cdf_;
};

/// P(request finds its video in some cache of its cluster):
/// 1 - E_V[exp(-lambda_u pi R_c^2 [1 - (1 - p_A(V))^M])].
double match_probability(const ContentConfig& cfg, double lambda_u, double cluster_radius);

struct MatchResult {
  /// sets[i] lists the (0-based) caches holding request i's video.
  std::vector<std::vector<int>> sets;
  int matched = 0;
};

MatchResult find_matches(std::span<const VideoId> requests, const CacheAssignment& caches);

}  // namespace d2d
