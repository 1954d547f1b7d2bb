#include "d2d/cluster.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "d2d/parallel.hpp"

namespace d2d {

namespace {

int poisson(double mean, RandomStream& rng) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(rng);
}

int uniform_index(int n, RandomStream& rng) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

template <class T>
void shuffle(std::vector<T>& v, RandomStream& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(uniform_index(i + 1, rng))]);
}

}  // namespace

ClusterSampler::ClusterSampler(const NetworkConfig& cfg)
    : radius_(cfg.cluster_radius),
      mean_caching_(cfg.lambda_u * cfg.cluster_area()),
      mean_requesting_(cfg.lambda_r * cfg.cluster_area()),
      cache_size_(cfg.content.cache_size),
      cache_pmf_(cfg.content.cache_pmf),
      request_sampler_(cfg.content.request_pmf),
      cache_sampler_(cfg.content.cache_pmf) {}

ClusterMarks ClusterSampler::sample(Point center, RandomStream& rng) const {
  ClusterMarks marks;
  marks.center = center;
  const int n_u = poisson(mean_caching_, rng);
  const int n_r = poisson(mean_requesting_, rng);
  marks.caching_positions.reserve(static_cast<std::size_t>(n_u));
  for (int i = 0; i < n_u; ++i) marks.caching_positions.push_back(uniform_in_disc(radius_, rng));
  marks.request_positions.reserve(static_cast<std::size_t>(n_r));
  for (int i = 0; i < n_r; ++i) marks.request_positions.push_back(uniform_in_disc(radius_, rng));
  marks.caches.assign(static_cast<std::size_t>(n_u), Cache(static_cast<std::size_t>(cache_size_)));
  for (Cache& cache : marks.caches)
    for (VideoId& v : cache) v = cache_sampler_(rng);
  marks.requests.resize(static_cast<std::size_t>(n_r));
  for (VideoId& v : marks.requests) v = request_sampler_(rng);
  marks.matches = find_matches(marks.requests, marks.caches);
  return marks;
}

MatchCounts ClusterSampler::sample_counts(RandomStream& rng) const {
  MatchCounts counts;
  counts.caching_users = poisson(mean_caching_, rng);
  counts.requesting_users = poisson(mean_requesting_, rng);
  if (counts.requesting_users == 0 || counts.caching_users == 0) return counts;

  // Distinct requested videos with their request multiplicity, in first-seen order.
  std::vector<std::pair<VideoId, int>> requested;
  std::unordered_map<VideoId, std::size_t> slot;
  for (int i = 0; i < counts.requesting_users; ++i) {
    const VideoId v = request_sampler_(rng);
    auto [it, inserted] = slot.try_emplace(v, requested.size());
    if (inserted) requested.emplace_back(v, 1);
    else ++requested[it->second].second;
  }
  // The N_u M cache entries are i.i.d. from p_A, so the occupancy of the
  // requested videos is multinomial; split it one video at a time.
  long long remaining = static_cast<long long>(counts.caching_users) * cache_size_;
  double mass_left = 1.0;
  for (const auto& [video, multiplicity] : requested) {
    if (remaining == 0) break;
    const double p = cache_pmf_[static_cast<std::size_t>(video - 1)];
    const double q = mass_left > 0.0 ? std::clamp(p / mass_left, 0.0, 1.0) : 1.0;
    const long long hits = std::binomial_distribution<long long>(remaining, q)(rng);
    if (hits > 0) counts.matched += multiplicity;
    remaining -= hits;
    mass_left -= p;
  }
  return counts;
}

ClusterMarks sample_cluster(const NetworkConfig& cfg, Point center, RandomStream& rng) {
  return ClusterSampler(cfg).sample(center, rng);
}

int slots_high(int matches) { return static_cast<int>(std::bit_ceil(static_cast<unsigned>(matches))); }
int slots_low(int matches) { return static_cast<int>(std::bit_floor(static_cast<unsigned>(matches))); }

int slot_count(int matches, double eps) {
  if (matches <= 0) throw std::domain_error("slot_count: needs at least one matched request");
  const int high = slots_high(matches);
  const int low = slots_low(matches);
  if (high == low) return high;
  const double excess = static_cast<double>(matches - low) / static_cast<double>(high - low);
  return excess < eps ? low : high;
}

int SlotPlan::scheduled() const {
  return static_cast<int>(std::count_if(assignments.begin(), assignments.end(),
                                        [](const auto& a) { return a.has_value(); }));
}

SlotPlan schedule(const ClusterMarks& marks, double eps, int max_matches, RandomStream& rng) {
  SlotPlan plan;
  std::vector<int> matched;
  for (std::size_t i = 0; i < marks.matches.sets.size(); ++i)
    if (!marks.matches.sets[i].empty()) matched.push_back(static_cast<int>(i));
  if (matched.empty()) return plan;

  // A uniform shuffle makes every later "drop at random" a suffix cut.
  shuffle(matched, rng);
  const int cap = max_matches > 0 ? max_matches : static_cast<int>(matched.size());
  const int kept = std::min(cap, static_cast<int>(matched.size()));
  plan.slots = slot_count(kept, eps);
  const int served = std::min(kept, plan.slots);
  plan.dropped.assign(matched.begin() + served, matched.end());

  plan.assignments.assign(static_cast<std::size_t>(plan.slots), std::nullopt);
  for (int s = 0; s < served; ++s) {
    const int receiver = matched[static_cast<std::size_t>(s)];
    const auto& holders = marks.matches.sets[static_cast<std::size_t>(receiver)];
    const int transmitter = holders[static_cast<std::size_t>(uniform_index(static_cast<int>(holders.size()), rng))];
    plan.assignments[static_cast<std::size_t>(s)] = SlotAssignment{transmitter, receiver};
  }
  // Spread the occupied slots uniformly over the W slots.
  if (served < plan.slots) shuffle(plan.assignments, rng);
  return plan;
}

int default_max_matches(const NetworkConfig& cfg, std::uint64_t seed, int replicates) {
  const ClusterSampler sampler(cfg);
  std::vector<int> counts(static_cast<std::size_t>(replicates));
  parallel_for(counts.size(), [&](std::size_t i) {
    RandomStream rng(seed, StreamTag::SlotLaw, i);
    counts[i] = sampler.sample_counts(rng).matched;
  });
  std::sort(counts.begin(), counts.end());
  // Largest n whose exceedance count must stay below replicates / 1000.
  const double allowed = 1e-3 * replicates;
  int n = 1;
  for (;;) {
    const auto above = counts.end() - std::upper_bound(counts.begin(), counts.end(), n);
    if (static_cast<double>(above) < allowed) return n;
    n *= 2;
  }
}

int resolve_max_matches(const NetworkConfig& cfg, std::uint64_t seed) {
  if (cfg.strategy.max_matches > 0) return cfg.strategy.max_matches;
  return default_max_matches(cfg, seed, cfg.simulation.law_replicates);
}

}  // namespace d2d
