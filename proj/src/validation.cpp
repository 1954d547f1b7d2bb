#include "d2d/validation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "d2d/cluster.hpp"
#include "d2d/content.hpp"
#include "d2d/parallel.hpp"
#include "d2d/stats.hpp"

namespace d2d {

DensityCheck matern_density_check(double lambda, double delta, double window_factor, std::size_t replicates,
                                  std::uint64_t seed) {
  const ParentProcess proc{ParentKind::MaternII, lambda, delta};
  const Window window({0.0, 0.0}, window_factor * delta);
  std::vector<double> density(replicates);
  parallel_for(replicates, [&](std::size_t i) {
    RandomStream rng(seed, StreamTag::Validation, i);
    density[i] = static_cast<double>(sample_matern_ii(proc, window, rng).size()) / window.area();
  });
  const MetricEstimate est = batch_means(density, EstimateMethod::FullMonteCarlo);
  DensityCheck check;
  check.lambda = lambda;
  check.delta = delta;
  check.empirical = est.value;
  check.std_error = est.std_error;
  check.formula = matern_ii_density(lambda, delta);
  check.relative_error = std::abs(check.empirical - check.formula) / check.formula;
  return check;
}

MatchCheck match_probability_check(const NetworkConfig& cfg, std::size_t clusters, std::uint64_t seed) {
  const ClusterSampler sampler(cfg);
  std::vector<double> matched(clusters), requests(clusters);
  parallel_for(clusters, [&](std::size_t i) {
    RandomStream rng(seed, StreamTag::Validation, i);
    const ClusterMarks marks = sampler.sample({0.0, 0.0}, rng);
    matched[i] = marks.match_count();
    requests[i] = marks.requesting_users();
  });
  const MetricEstimate est = batch_ratio(matched, requests, EstimateMethod::FullMonteCarlo);
  return {match_probability(cfg.content, cfg.lambda_u, cfg.cluster_radius), est.value, est.std_error};
}

SlotRateDominance slot_rate_dominance_check(std::size_t instances, std::uint64_t seed) {
  SlotRateDominance out;
  out.instances = instances;
  RandomStream rng(seed, StreamTag::Validation, 0);
  std::lognormal_distribution<double> spread(0.0, 1.5);
  std::uniform_int_distribution<int> exponent(0, 4);
  for (std::size_t t = 0; t < instances; ++t) {
    const int n1 = 1 << exponent(rng);
    const int phases_count = 1 << exponent(rng);
    const double gain = spread(rng);
    const double power = spread(rng);
    std::vector<double> phases(static_cast<std::size_t>(phases_count));
    // Every fourth instance uses equal phases, where the two rates coincide.
    const bool equal = t % 4 == 0;
    const double base = spread(rng);
    for (double& p : phases) p = equal ? base : spread(rng);
    double mean = 0.0, lo = phases[0], hi = phases[0];
    for (double p : phases) {
      mean += p;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    mean /= phases_count;
    const double exact = exact_slot_rate_oracle(power, gain, phases, n1);
    const double bound = achievable_rate_bound(power, gain, mean, n1);
    if (exact < bound * (1.0 - 1e-12)) ++out.violations;
    if (hi - lo > 1e-6 * hi) {
      ++out.distinct_instances;
      if (!(exact > bound)) ++out.strict_failures;
    }
  }
  return out;
}

LtComparison b_mode_comparison(const NetworkConfig& cfg, const SlotCountLaw& law, int n1, Point d,
                               std::span<const double> etas, std::size_t replicates, std::uint64_t seed) {
  if (cfg.channel.kind != ChannelKind::RayleighPowerLaw)
    throw std::invalid_argument("b_mode_comparison: needs the Rayleigh power-law channel");
  const std::size_t m = etas.size();
  std::vector<double> worst(replicates * m), random(replicates * m);
  parallel_for(replicates, [&](std::size_t i) {
    const InterferenceField field = sample_interference_field(cfg, law, seed, i);
    // Both modes place the same transmitters; only the activity counts differ.
    const double power = cfg.channel.transmit_power();
    std::vector<double> w, r;
    for (const InterferingCluster& c : field.clusters) {
      const ActiveSet set = active_transmitters(field, c, n1, BMode::RandomB);
      for (std::size_t j = 0; j < set.positions.size(); ++j) {
        const double mean = power * set.weight * path_loss(distance(set.positions[j], d), cfg.channel);
        w.push_back(mean);
        if (set.activity[j] > 0) r.push_back(mean * set.activity[j]);
      }
    }
    for (std::size_t e = 0; e < m; ++e) {
      worst[i * m + e] = rayleigh_laplace(w, etas[e]);
      random[i * m + e] = rayleigh_laplace(r, etas[e]);
    }
  });
  LtComparison out;
  out.etas.assign(etas.begin(), etas.end());
  std::vector<double> a(replicates), b(replicates), diff(replicates);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t i = 0; i < replicates; ++i) {
      a[i] = worst[i * m + e];
      b[i] = random[i * m + e];
      diff[i] = a[i] - b[i];
    }
    out.worst_case.push_back(batch_means(a, EstimateMethod::FullMonteCarlo).value);
    out.random.push_back(batch_means(b, EstimateMethod::FullMonteCarlo).value);
    out.diff_se.push_back(batch_means(diff, EstimateMethod::FullMonteCarlo).std_error);
  }
  return out;
}

}  // namespace d2d
