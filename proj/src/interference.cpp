#include "d2d/interference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "d2d/parallel.hpp"

namespace d2d {

int SlotCountLaw::sample(RandomStream& rng) const {
  if (rng.uniform() < empty_probability || pmf.empty()) return 0;
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    if (u < acc) return 1 << i;
  }
  // Round-off: return the largest supported count.
  for (std::size_t i = pmf.size(); i-- > 0;)
    if (pmf[i] > 0.0) return 1 << i;
  return 1;
}

void SlotCountLaw::validate() const {
  if (empty_probability < 0.0 || empty_probability > 1.0)
    throw std::invalid_argument("slot-count law: empty probability outside [0, 1]");
  if (empty_probability < 1.0) {
    const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("slot-count law: pmf does not sum to one");
  }
}

SlotCountLaw slot_count_law_from_counts(std::span<const int> match_counts, double eps, int max_matches) {
  SlotCountLaw law;
  const int cap = max_matches > 0 ? max_matches : std::numeric_limits<int>::max();
  std::vector<double> hist;
  std::size_t empty = 0;
  for (int n : match_counts) {
    if (n <= 0) {
      ++empty;
      continue;
    }
    const auto exponent = static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(slot_count(std::min(n, cap), eps))));
    if (hist.size() <= exponent) hist.resize(exponent + 1, 0.0);
    hist[exponent] += 1.0;
  }
  if (max_matches > 0)
    hist.resize(static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(max_matches))) + 1, 0.0);
  const std::size_t nonempty = match_counts.size() - empty;
  law.empty_probability = match_counts.empty() ? 1.0 : static_cast<double>(empty) / static_cast<double>(match_counts.size());
  if (nonempty > 0)
    for (double& h : hist) h /= static_cast<double>(nonempty);
  law.pmf = std::move(hist);
  return law;
}

SlotCountLaw estimate_slot_count_law(const NetworkConfig& cfg, int max_matches, int replicates,
                                     std::uint64_t seed) {
  if (replicates < 1) throw std::invalid_argument("estimate_slot_count_law: replicates must be >= 1");
  const ClusterSampler sampler(cfg);
  std::vector<int> counts(static_cast<std::size_t>(replicates));
  parallel_for(counts.size(), [&](std::size_t i) {
    RandomStream rng(seed, StreamTag::SlotLaw, i);
    counts[i] = sampler.sample_counts(rng).matched;
  });
  return slot_count_law_from_counts(counts, cfg.strategy.eps, max_matches);
}

InterferenceField sample_interference_field(const NetworkConfig& cfg, const SlotCountLaw& law,
                                            std::uint64_t seed, std::uint64_t replicate) {
  RandomStream rng(seed, StreamTag::InterferenceField, replicate);
  const Window window({0.0, 0.0}, cfg.window_radius());
  const PointSet centers = cfg.parent.kind == ParentKind::MaternII
                               ? sample_matern_ii_palm(cfg.parent, window, rng)
                               : translated_grid_palm(cfg.parent.delta, window);
  InterferenceField field;
  field.cluster_radius = cfg.cluster_radius;
  field.seed = seed;
  field.clusters.reserve(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const int w = law.sample(rng);
    if (w == 0) continue;
    InterferingCluster c;
    c.center = centers[i];
    c.slots = w;
    c.penetrations = cfg.parent.kind == ParentKind::TranslatedGrid
                         ? grid_penetration_count(c.center, {0.0, 0.0}, cfg.parent.delta)
                         : 1;
    c.key = (replicate << 24) ^ i;
    field.clusters.push_back(c);
  }
  return field;
}

ActiveSet active_transmitters(const InterferenceField& field, const InterferingCluster& cluster, int n1,
                              BMode mode) {
  RandomStream rng(field.seed, StreamTag::Transmitters, cluster.key);
  ActiveSet set;
  const int k = std::max(1, cluster.slots / n1);
  set.weight = cluster.slots > n1 ? static_cast<double>(n1) / cluster.slots : 1.0;
  set.positions.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const Point offset = uniform_in_disc(field.cluster_radius, rng);
    set.positions.push_back(field.at_centers ? cluster.center : cluster.center + offset);
  }
  set.activity.assign(static_cast<std::size_t>(k), 1);
  if (mode == BMode::RandomB && k > 1) {
    std::fill(set.activity.begin(), set.activity.end(), 0);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int s = 0; s < k; ++s) ++set.activity[static_cast<std::size_t>(pick(rng))];
  }
  return set;
}

double interference_at(const InterferenceField& field, Point d, int n1, const ChannelModel& channel,
                       BMode mode, RandomStream& fading) {
  const double power = channel.transmit_power();
  double total = 0.0;
  for (const InterferingCluster& c : field.clusters) {
    const ActiveSet set = active_transmitters(field, c, n1, mode);
    double sum = 0.0;
    for (std::size_t j = 0; j < set.positions.size(); ++j) {
      // Draw every gain in both modes so fading stays paired across modes.
      const double g = sample_inter_gain(set.positions[j], d, c.penetrations, channel, fading);
      sum += set.activity[j] * g;
    }
    total += set.weight * sum;
  }
  return power * total;
}

std::vector<double> rayleigh_interference_means(const InterferenceField& field, Point d, int n1,
                                                const ChannelModel& channel, BMode mode) {
  if (channel.kind != ChannelKind::RayleighPowerLaw)
    throw std::invalid_argument("rayleigh_interference_means: needs the Rayleigh power-law channel");
  const double power = channel.transmit_power();
  std::vector<double> means;
  for (const InterferingCluster& c : field.clusters) {
    const ActiveSet set = active_transmitters(field, c, n1, mode);
    for (std::size_t j = 0; j < set.positions.size(); ++j)
      if (set.activity[j] > 0)
        means.push_back(power * set.weight * set.activity[j] * path_loss(distance(set.positions[j], d), channel));
  }
  return means;
}

double rayleigh_laplace(std::span<const double> means, double eta) {
  if (eta == 0.0) return 1.0;
  double log_lt = 0.0;
  for (double m : means) log_lt -= std::log1p(eta * m);
  return std::exp(log_lt);
}

double rayleigh_laplace_given_field(const InterferenceField& field, Point d, int n1,
                                    const ChannelModel& channel, BMode mode, double eta) {
  return rayleigh_laplace(rayleigh_interference_means(field, d, n1, channel, mode), eta);
}

double achievable_rate_bound(double power, double gain, double interference, int n1) {
  if (interference <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(1.0 + power * gain / interference) / n1;
}

double exact_slot_rate_oracle(double power, double gain, std::span<const double> phases, int n1) {
  if (phases.empty()) throw std::invalid_argument("exact_slot_rate_oracle: no interference phases");
  double sum = 0.0;
  for (double phase : phases) {
    if (phase <= 0.0) return std::numeric_limits<double>::infinity();
    sum += std::log2(1.0 + power * gain / phase);
  }
  return sum / static_cast<double>(phases.size()) / n1;
}

}  // namespace d2d
