#include "d2d/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace d2d {

NetworkRealization realize_network(const NetworkConfig& cfg, const PointSet& centers, int max_matches,
                                   RandomStream& rng) {
  const ClusterSampler sampler(cfg);
  NetworkRealization net;
  net.clusters.reserve(centers.size());
  net.plans.reserve(centers.size());
  for (Point c : centers) {
    net.clusters.push_back(sampler.sample(c, rng));
    net.plans.push_back(schedule(net.clusters.back(), cfg.strategy.eps, max_matches, rng));
  }
  return net;
}

int ClusterOutcome::served(double rate) const {
  return static_cast<int>(std::count_if(achievable_rates.begin(), achievable_rates.end(),
                                        [rate](double r) { return rate < r; }));
}

namespace {

int penetrations(const NetworkConfig& cfg, Point a, Point b) {
  return cfg.parent.kind == ParentKind::TranslatedGrid ? grid_penetration_count(a, b, cfg.parent.delta) : 1;
}

// Time-averaged power received at `rx` from cluster `x` during observer slot
// `slot` of `observer_slots`.
double cluster_interference(const NetworkConfig& cfg, const ClusterMarks& x, const SlotPlan& plan, Point rx,
                            int pen, int slot, int observer_slots, SlotAccounting accounting,
                            RandomStream& fading) {
  int first = 0;
  int count = 1;
  if (plan.slots <= observer_slots) {
    first = slot * plan.slots / observer_slots;
  } else {
    count = plan.slots / observer_slots;
    first = slot * count;
  }
  std::unordered_map<int, double> shared;  // transmitter -> gain, Actual accounting only
  double sum = 0.0;
  for (int j = first; j < first + count; ++j) {
    const auto& a = plan.assignments[static_cast<std::size_t>(j)];
    if (accounting == SlotAccounting::WorstCase) {
      const Point tx = x.center + (a ? x.caching_positions[static_cast<std::size_t>(a->transmitter)]
                                     : uniform_in_disc(cfg.cluster_radius, fading));
      sum += sample_inter_gain(tx, rx, pen, cfg.channel, fading);
    } else if (a) {
      auto [it, fresh] = shared.try_emplace(a->transmitter, 0.0);
      if (fresh) {
        const Point tx = x.center + x.caching_positions[static_cast<std::size_t>(a->transmitter)];
        it->second = sample_inter_gain(tx, rx, pen, cfg.channel, fading);
      }
      sum += it->second;
    }
  }
  return sum / count;
}

}  // namespace

ClusterOutcome evaluate_cluster(const NetworkRealization& net, std::size_t target, const NetworkConfig& cfg,
                                double truncation, SlotAccounting accounting, RandomStream& fading) {
  const ClusterMarks& marks = net.clusters[target];
  const SlotPlan& plan = net.plans[target];
  ClusterOutcome out;
  out.requests = marks.requesting_users();
  out.matched = marks.match_count();
  out.scheduled = plan.scheduled();
  if (out.scheduled == 0) return out;

  std::vector<std::size_t> neighbours;
  for (std::size_t i = 0; i < net.clusters.size(); ++i)
    if (i != target && net.plans[i].slots > 0 && distance(net.clusters[i].center, marks.center) <= truncation)
      neighbours.push_back(i);

  const double power = cfg.channel.transmit_power();
  for (int s = 0; s < plan.slots; ++s) {
    const auto& a = plan.assignments[static_cast<std::size_t>(s)];
    if (!a) continue;
    const Point tx = marks.center + marks.caching_positions[static_cast<std::size_t>(a->transmitter)];
    const Point rx = marks.center + marks.request_positions[static_cast<std::size_t>(a->receiver)];
    const double signal = power * sample_intra_gain(tx, rx, cfg.channel, fading);
    double interference = 0.0;
    for (std::size_t i : neighbours) {
      const ClusterMarks& x = net.clusters[i];
      interference += cluster_interference(cfg, x, net.plans[i], rx, penetrations(cfg, x.center, marks.center), s,
                                           plan.slots, accounting, fading);
    }
    interference = power * interference + cfg.channel.noise_power;
    const double rate = interference > 0.0 ? std::log2(1.0 + signal / interference) / plan.slots
                                           : std::numeric_limits<double>::infinity();
    out.achievable_rates.push_back(rate);
  }
  return out;
}

NetworkRealization sample_palm_network(const NetworkConfig& cfg, int max_matches, RandomStream& rng) {
  const Window window({0.0, 0.0}, cfg.window_radius());
  PointSet centers{{0.0, 0.0}};
  const PointSet others = cfg.parent.kind == ParentKind::MaternII ? sample_matern_ii_palm(cfg.parent, window, rng)
                                                                  : translated_grid_palm(cfg.parent.delta, window);
  centers.insert(centers.end(), others.begin(), others.end());
  return realize_network(cfg, centers, max_matches, rng);
}

}  // namespace d2d
