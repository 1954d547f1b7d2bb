#include "d2d/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "d2d/cluster.hpp"
#include "d2d/content.hpp"
#include "d2d/laplace.hpp"
#include "d2d/parallel.hpp"

namespace d2d {

namespace {

// Stream index offset so the slot-count pre-pass never shares draws with replicates.
constexpr std::uint64_t kLawSeedSalt = 0x5eed5eed5eedULL;

// P(exponential with mean 1 exceeds a b), with 0 * inf read as 0.
double exp_tail(double a, double b) {
  if (a == 0.0 || b == 0.0) return 1.0;
  return std::exp(-a * b);
}

struct ReplicateDraw {
  int requests = 0;
  int slots = 0;      // W, 0 when nothing is scheduled
  double weight = 0;  // min(N_m, W)
  Point source;
  Point destination;
};

}  // namespace

ClusterStatistics cluster_statistics(const NetworkConfig& cfg, std::uint64_t seed) {
  ClusterStatistics stats;
  stats.max_matches = resolve_max_matches(cfg, seed ^ kLawSeedSalt);
  stats.law = estimate_slot_count_law(cfg, stats.max_matches, cfg.simulation.law_replicates, seed ^ kLawSeedSalt);
  return stats;
}

MetricEvaluator::MetricEvaluator(const NetworkConfig& cfg, const MetricOptions& options)
    : MetricEvaluator(cfg, options, (cfg.validate(), cluster_statistics(cfg, options.seed))) {}

MetricEvaluator::MetricEvaluator(const NetworkConfig& cfg, const MetricOptions& options, ClusterStatistics stats)
    : cfg_(cfg), options_(options), max_matches_(stats.max_matches), law_(std::move(stats.law)) {
  cfg_.validate();
  if (options_.replicates < 2) throw std::invalid_argument("metrics: need at least two replicates");
  const bool rayleigh = cfg_.channel.kind == ChannelKind::RayleighPowerLaw;
  switch (options_.source) {
    case LtSource::Auto: closed_form_ = rayleigh && cfg_.parent.kind == ParentKind::MaternII; break;
    case LtSource::ClosedForm:
      if (!rayleigh) throw std::invalid_argument("metrics: the closed-form LT needs the Rayleigh channel");
      closed_form_ = true;
      break;
    case LtSource::MonteCarlo: closed_form_ = false; break;
  }
}

EstimateMethod MetricEvaluator::method() const {
  return closed_form_ ? EstimateMethod::LtRayleigh : EstimateMethod::FullMonteCarlo;
}

std::vector<MetricPoint> MetricEvaluator::evaluate(std::span<const double> rates) const {
  for (double r : rates)
    if (!(r >= 0.0)) throw std::invalid_argument("metrics: rates must be >= 0");
  const std::size_t n = options_.replicates;
  const std::size_t m = rates.size();
  const ChannelModel& ch = cfg_.channel;
  const double power = ch.transmit_power();
  const ClusterSampler sampler(cfg_);

  // One far-field approximation per possible observer slot count.
  std::vector<std::unique_ptr<LaplaceApproximation>> approx;
  if (closed_form_)
    for (int n1 = 1; n1 <= std::max(1, max_matches_); n1 *= 2)
      approx.push_back(std::make_unique<LaplaceApproximation>(cfg_, law_, n1));

  std::vector<double> requests(n, 0.0);
  std::vector<double> served(n * m, 0.0);   // min(N_m, W) F, replicate-major
  std::vector<double> success(n * m, 0.0);  // 1{N_m >= 1} F
  parallel_for(n, [&](std::size_t i) {
    RandomStream rng(options_.seed, StreamTag::OriginMarks, i);
    const MatchCounts counts = sampler.sample_counts(rng);
    requests[i] = counts.requesting_users;
    const int kept = std::min(counts.matched, max_matches_);
    if (kept == 0) return;
    ReplicateDraw draw;
    draw.slots = slot_count(kept, cfg_.strategy.eps);
    draw.weight = std::min(kept, draw.slots);
    draw.source = uniform_in_disc(cfg_.cluster_radius, rng);
    draw.destination = uniform_in_disc(cfg_.cluster_radius, rng);
    const double link = distance(draw.source, draw.destination);

    std::vector<double> ccdf(m, 1.0);
    auto threshold = [&](double rate) { return std::exp2(draw.slots * rate) - 1.0; };
    if (link <= 0.0) {
      // Co-located pair: the link gain is unbounded, every rate succeeds.
    } else if (closed_form_) {
      const auto& lt = *approx[static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(draw.slots)))];
      const double l = path_loss(link, ch);
      for (std::size_t r = 0; r < m; ++r) {
        const double eta = threshold(rates[r]) / (power * l);
        ccdf[r] = exp_tail(eta, ch.noise_power) * lt(eta, norm(draw.destination));
      }
    } else {
      const InterferenceField field = sample_interference_field(cfg_, law_, options_.seed, i);
      if (ch.kind == ChannelKind::RayleighPowerLaw) {
        const auto means = rayleigh_interference_means(field, draw.destination, draw.slots, ch, BMode::WorstCaseB1);
        const double l = path_loss(link, ch);
        for (std::size_t r = 0; r < m; ++r) {
          const double eta = threshold(rates[r]) / (power * l);
          ccdf[r] = exp_tail(eta, ch.noise_power) * rayleigh_laplace(means, eta);
        }
      } else {
        RandomStream fading(options_.seed, StreamTag::Fading, i);
        const double noise = ch.noise_power +
            interference_at(field, draw.destination, draw.slots, ch, BMode::WorstCaseB1, fading);
        for (std::size_t r = 0; r < m; ++r) {
          const double tau = threshold(rates[r]);
          ccdf[r] = noise == 0.0 || tau == 0.0 ? 1.0 : intra_gain_ccdf(tau * noise / power, link, ch);
        }
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      served[i * m + r] = draw.weight * ccdf[r];
      success[i * m + r] = ccdf[r];
    }
  });

  const double coverage = cfg_.parent_density() * cfg_.cluster_area();
  std::vector<MetricPoint> points(m);
  std::vector<double> column(n);
  for (std::size_t r = 0; r < m; ++r) {
    MetricPoint& p = points[r];
    p.rate = rates[r];
    for (std::size_t i = 0; i < n; ++i) column[i] = served[i * m + r];
    p.local = batch_ratio(column, requests, method());
    p.global = p.local;
    p.global.value *= coverage;
    p.global.std_error *= coverage;
    for (std::size_t i = 0; i < n; ++i) column[i] = rates[r] * success[i * m + r];
    p.average_rate = batch_means(column, method());
  }
  return points;
}

std::vector<MetricPoint> evaluate_metrics(const NetworkConfig& cfg, std::span<const double> rates,
                                          const MetricOptions& options) {
  return MetricEvaluator(cfg, options).evaluate(rates);
}

MetricEstimate local_metric(const NetworkConfig& cfg, double rate, const MetricOptions& options) {
  return evaluate_metrics(cfg, std::span(&rate, 1), options).front().local;
}

MetricEstimate global_metric(const NetworkConfig& cfg, double rate, const MetricOptions& options) {
  return evaluate_metrics(cfg, std::span(&rate, 1), options).front().global;
}

MetricEstimate average_rate(const NetworkConfig& cfg, double rate, const MetricOptions& options) {
  return evaluate_metrics(cfg, std::span(&rate, 1), options).front().average_rate;
}

MetricBounds metric_bounds(const NetworkConfig& cfg) {
  MetricBounds b;
  b.match_probability = match_probability(cfg.content, cfg.lambda_u, cfg.cluster_radius);
  b.local_upper = b.match_probability;
  b.global_upper = cfg.parent_density() * cfg.cluster_area() * b.match_probability;
  return b;
}

std::vector<MetricPoint> event_metrics(const NetworkConfig& cfg, std::span<const double> rates,
                                       const MetricOptions& options, SlotAccounting accounting) {
  cfg.validate();
  const std::size_t n = options.replicates;
  const std::size_t m = rates.size();
  const int cap = resolve_max_matches(cfg, options.seed ^ kLawSeedSalt);
  std::vector<ClusterOutcome> outcomes(n);
  parallel_for(n, [&](std::size_t i) {
    RandomStream rng(options.seed, StreamTag::Network, i);
    const NetworkRealization net = sample_palm_network(cfg, cap, rng);
    outcomes[i] = evaluate_cluster(net, 0, cfg, cfg.window_radius(), accounting, rng);
  });

  const double coverage = cfg.parent_density() * cfg.cluster_area();
  std::vector<double> num(n), den(n), avg(n);
  for (std::size_t i = 0; i < n; ++i) den[i] = outcomes[i].requests;
  std::vector<MetricPoint> points(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const int s = outcomes[i].served(rates[r]);
      num[i] = s;
      avg[i] = outcomes[i].scheduled > 0 ? rates[r] * s / outcomes[i].scheduled : 0.0;
    }
    MetricPoint& p = points[r];
    p.rate = rates[r];
    p.local = batch_ratio(num, den, EstimateMethod::FullMonteCarlo);
    p.global = p.local;
    p.global.value *= coverage;
    p.global.std_error *= coverage;
    p.average_rate = batch_means(avg, EstimateMethod::FullMonteCarlo);
  }
  return points;
}

CampbellCheck campbell_identity_check(const NetworkConfig& cfg, double region_radius, double rate,
                                      const MetricOptions& options) {
  cfg.validate();
  if (!(region_radius > 0.0)) throw std::invalid_argument("campbell_identity_check: region radius must be positive");
  const std::size_t n = options.replicates;
  const int cap = resolve_max_matches(cfg, options.seed ^ kLawSeedSalt);
  const double truncation = cfg.window_radius();
  const Window region({0.0, 0.0}, region_radius);
  const Window window({0.0, 0.0}, region_radius + truncation);

  std::vector<double> direct(n), palm(n);
  parallel_for(n, [&](std::size_t i) {
    RandomStream rng(options.seed, StreamTag::Validation, i);
    const PointSet centers = cfg.parent.kind == ParentKind::MaternII ? sample_matern_ii(cfg.parent, window, rng)
                                                                     : sample_translated_grid(cfg.parent.delta, window, rng);
    const NetworkRealization net = realize_network(cfg, centers, cap, rng);
    double count = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c)
      if (region.contains(centers[c]))
        count += evaluate_cluster(net, c, cfg, truncation, SlotAccounting::Actual, rng).served(rate);
    direct[i] = count;

    RandomStream palm_rng(options.seed, StreamTag::Network, i);
    const NetworkRealization typical = sample_palm_network(cfg, cap, palm_rng);
    palm[i] = evaluate_cluster(typical, 0, cfg, truncation, SlotAccounting::Actual, palm_rng).served(rate);
  });

  const MetricEstimate d = batch_means(direct, EstimateMethod::FullMonteCarlo);
  const MetricEstimate p = batch_means(palm, EstimateMethod::FullMonteCarlo);
  const double scale = cfg.parent_density() * region.area();
  CampbellCheck check;
  check.direct_mean = d.value;
  check.direct_se = d.std_error;
  check.palm_mean = scale * p.value;
  check.palm_se = scale * p.std_error;
  const double gap = std::abs(check.direct_mean - check.palm_mean);
  check.discrepancy = check.palm_mean > 0.0 ? gap / check.palm_mean : (gap > 0.0 ? 1.0 : 0.0);
  const double se = std::hypot(check.direct_se, check.palm_se);
  check.z_score = se > 0.0 ? gap / se : (gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return check;
}

}  // namespace d2d
