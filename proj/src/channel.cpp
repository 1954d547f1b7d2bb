#include "d2d/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace d2d {

double ChannelModel::transmit_power() const {
  if (kind == ChannelKind::RayleighPowerLaw) return power;
  return std::pow(10.0, (winner.tx_gain_db + winner.rx_gain_db + winner.tx_power_dbm) / 10.0);
}

void ChannelModel::validate() const {
  if (!(alpha > 2.0)) throw std::invalid_argument("channel: alpha must exceed 2");
  if (!(power > 0.0)) throw std::invalid_argument("channel: power must be positive");
  if (!(path_loss_constant > 0.0)) throw std::invalid_argument("channel: path-loss constant must be positive");
  if (noise_power < 0.0) throw std::invalid_argument("channel: noise power must be >= 0");
  if (kind == ChannelKind::WinnerLognormal && !(winner.carrier_ghz > 0.0))
    throw std::invalid_argument("channel: carrier frequency must be positive");
}

double path_loss(double d, const ChannelModel& model) {
  if (!(d > 0.0)) throw std::domain_error("path_loss: co-located transceivers");
  if (model.alpha == 4.0) {
    const double d2 = d * d;
    return model.path_loss_constant / (d2 * d2);
  }
  return model.path_loss_constant * std::pow(d, -model.alpha);
}

double sample_rayleigh_power(RandomStream& rng) {
  return std::exponential_distribution<double>(1.0)(rng);
}

double los_probability(double d) {
  if (d <= 5.0) return 1.0;
  const double inner = 1.24 - 0.61 * std::log10(d);
  const double p = 1.0 - 0.9 * std::cbrt(1.0 - inner * inner * inner);
  return std::clamp(p, 0.0, 1.0);
}

int wall_count(double d, bool los, double spacing) {
  if (los) return 0;
  return 1 + static_cast<int>(std::floor(std::max(0.0, d / spacing - 1.0)));
}

double intra_cluster_loss_db(double d, bool los, double chi_db, const WinnerParams& params) {
  if (!(d > 0.0)) throw std::domain_error("intra_cluster_loss_db: co-located transceivers");
  const WinnerLawDb& law = los ? params.los : params.nlos;
  return law.slope * std::log10(d) + law.intercept + law.frequency * std::log10(params.carrier_ghz / 5.0) +
         params.wall_loss_db * wall_count(d, los, params.wall_spacing) + chi_db;
}

double inter_cluster_loss_db(double d, int penetrations, double chi_db, const WinnerParams& params) {
  if (!(d > 0.0)) throw std::domain_error("inter_cluster_loss_db: co-located transceivers");
  const WinnerLawDb& law = params.inter;
  return law.slope * std::log10(d) + law.intercept + law.frequency * std::log10(params.carrier_ghz / 5.0) +
         params.penetration_loss_db * penetrations + chi_db;
}

namespace {

double db_to_gain(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

double normal(double sigma, RandomStream& rng) {
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

}  // namespace

double intra_cluster_gain_winner(Point x, Point y, const ChannelModel& model, RandomStream& rng) {
  const double d = distance(x, y);
  const WinnerParams& params = model.winner;
  const bool los = d <= params.los_breakpoint || rng.uniform() < los_probability(d);
  const double chi = normal(los ? params.los.sigma : params.nlos.sigma, rng);
  return db_to_gain(intra_cluster_loss_db(d, los, chi, params));
}

double inter_cluster_gain_winner(Point x, Point y, int penetrations, const ChannelModel& model,
                                 RandomStream& rng) {
  const double chi = normal(model.winner.inter.sigma, rng);
  return db_to_gain(inter_cluster_loss_db(distance(x, y), penetrations, chi, model.winner));
}

int grid_penetration_count(Point c1, Point c2, double spacing) {
  const double steps = inf_norm(c1 - c2) / spacing;
  return std::max(1, static_cast<int>(std::lround(steps)));
}

double sample_intra_gain(Point x, Point y, const ChannelModel& model, RandomStream& rng) {
  if (model.kind == ChannelKind::WinnerLognormal) return intra_cluster_gain_winner(x, y, model, rng);
  return sample_rayleigh_power(rng) * path_loss(distance(x, y), model);
}

double sample_inter_gain(Point x, Point y, int penetrations, const ChannelModel& model,
                         RandomStream& rng) {
  if (model.kind == ChannelKind::WinnerLognormal)
    return inter_cluster_gain_winner(x, y, penetrations, model, rng);
  return sample_rayleigh_power(rng) * path_loss(distance(x, y), model);
}

namespace {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double intra_gain_ccdf(double threshold, double d, const ChannelModel& model) {
  if (threshold <= 0.0) return 1.0;
  if (model.kind == ChannelKind::RayleighPowerLaw) return std::exp(-threshold / path_loss(d, model));
  // |g|^2 > t  <=>  loss_db(chi) < -10 log10 t  <=>  chi < -10 log10 t - loss_db(0).
  const WinnerParams& params = model.winner;
  const double budget_db = -10.0 * std::log10(threshold);
  const double p_los = d <= params.los_breakpoint ? 1.0 : los_probability(d);
  double ccdf = p_los * std_normal_cdf((budget_db - intra_cluster_loss_db(d, true, 0.0, params)) /
                                       params.los.sigma);
  if (p_los < 1.0)
    ccdf += (1.0 - p_los) * std_normal_cdf((budget_db - intra_cluster_loss_db(d, false, 0.0, params)) /
                                           params.nlos.sigma);
  return ccdf;
}

}  // namespace d2d
