#include "d2d/content.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace d2d {

std::vector<double> zipf_pmf(double gamma, int library_size) {
  if (library_size < 1) throw std::invalid_argument("zipf_pmf: library size must be >= 1");
  if (gamma < 0.0) throw std::invalid_argument("zipf_pmf: gamma must be >= 0");
  std::vector<double> pmf(static_cast<std::size_t>(library_size));
  for (int v = 1; v <= library_size; ++v) pmf[static_cast<std::size_t>(v - 1)] = std::pow(v, -gamma);
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& p : pmf) p /= total;
  return pmf;
}

ContentConfig ContentConfig::zipf(int library_size, int cache_size, double gamma) {
  ContentConfig cfg;
  cfg.library_size = library_size;
  cfg.cache_size = cache_size;
  cfg.zipf_gamma = gamma;
  cfg.request_pmf = zipf_pmf(gamma, library_size);
  cfg.cache_pmf = cfg.request_pmf;
  return cfg;
}

namespace {

void check_pmf(const std::vector<double>& pmf, int library_size, const char* name) {
  if (pmf.size() != static_cast<std::size_t>(library_size))
    throw std::invalid_argument(std::string(name) + ": length differs from library size");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw std::invalid_argument(std::string(name) + ": negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(name) + ": does not sum to one");
}

}  // namespace

void ContentConfig::validate() const {
  if (library_size < 1) throw std::invalid_argument("content: library size must be >= 1");
  if (cache_size < 1) throw std::invalid_argument("content: cache size must be >= 1");
  check_pmf(request_pmf, library_size, "request pmf");
  check_pmf(cache_pmf, library_size, "cache pmf");
}

DiscreteSampler::DiscreteSampler(std::span<const double> pmf) : cdf_(pmf.size()) {
  if (pmf.empty()) throw std::invalid_argument("DiscreteSampler: empty pmf");
  std::partial_sum(pmf.begin(), pmf.end(), cdf_.begin());
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

VideoId DiscreteSampler::operator()(RandomStream& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<VideoId>(std::min<std::ptrdiff_t>(it - cdf_.begin(), size() - 1)) + 1;
}

double match_probability(const ContentConfig& cfg, double lambda_u, double cluster_radius) {
  if (lambda_u < 0.0 || !(cluster_radius > 0.0))
    throw std::invalid_argument("match_probability: need lambda_u >= 0 and R_c > 0");
  cfg.validate();
  const double mean_users = lambda_u * std::numbers::pi * cluster_radius * cluster_radius;
  double miss = 0.0;
  for (int v = 0; v < cfg.library_size; ++v) {
    const double p_cached = -std::expm1(cfg.cache_size * std::log1p(-cfg.cache_pmf[static_cast<std::size_t>(v)]));
    miss += cfg.request_pmf[static_cast<std::size_t>(v)] * std::exp(-mean_users * p_cached);
  }
  return std::clamp(1.0 - miss, 0.0, 1.0);
}

MatchResult find_matches(std::span<const VideoId> requests, const CacheAssignment& caches) {
  MatchResult result;
  result.sets.resize(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    for (std::size_t j = 0; j < caches.size(); ++j)
      if (std::find(caches[j].begin(), caches[j].end(), requests[i]) != caches[j].end())
        result.sets[i].push_back(static_cast<int>(j));
    if (!result.sets[i].empty()) ++result.matched;
  }
  return result;
}

}  // namespace d2d
