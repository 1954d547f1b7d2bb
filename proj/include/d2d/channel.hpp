#pragma once

#include "d2d/geometry.hpp"
#include "d2d/rng.hpp"

namespace d2d {

enum class ChannelKind { RayleighPowerLaw, WinnerLognormal };

/// Attenuation in dB: slope*log10(d) + intercept + frequency*log10(f_c/5) (+ extras) + chi.
struct WinnerLawDb {
  double slope = 0.0;
  double intercept = 0.0;
  double frequency = 0.0;
  double sigma = 0.0;
};

/// Indoor A1 law inside clusters (LOS / NLOS) and the B4 variant between clusters.
struct WinnerParams {
  double carrier_ghz = 2.45;
  double tx_gain_db = 12.0;
  double rx_gain_db = 0.0;
  double tx_power_dbm = 20.0;
  WinnerLawDb los{18.7, 46.8, 20.0, 3.0};
  WinnerLawDb nlos{36.8, 43.8, 23.0, 6.0};
  double wall_loss_db = 5.0;
  double wall_spacing = 5.0;
  double los_breakpoint = 5.0;
  WinnerLawDb inter{40.0, 41.0, 22.7, 7.0};
  double penetration_loss_db = 28.0;
};

struct ChannelModel {
  ChannelKind kind = ChannelKind::RayleighPowerLaw;
  double alpha = 4.0;               // power-law exponent
  double path_loss_constant = 1.0;  // C~
  double power = 1.0;               // transmit power for the power-law model
  double noise_power = 0.0;         // additive noise, off by default
  WinnerParams winner;

  /// P: `power` for the power-law model, 10^((G_t + G_r + P_tx)/10) for Winner.
  double transmit_power() const;
  void validate() const;
};

/// C~ d^-alpha. Throws std::domain_error for d <= 0.
double path_loss(double d, const ChannelModel& model);

/// Unit-mean exponential power gain (Rayleigh fading).
double sample_rayleigh_power(RandomStream& rng);

/// Winner II A1 line-of-sight probability, clamped to [0, 1].
double los_probability(double d);

/// Wall count: 0 under LOS, otherwise 1 + floor((d/spacing - 1)^+).
int wall_count(double d, bool los, double spacing = 5.0);

double intra_cluster_loss_db(double d, bool los, double chi_db, const WinnerParams& params);
double inter_cluster_loss_db(double d, int penetrations, double chi_db, const WinnerParams& params);

/// Linear intra-cluster power gain |g|^2 (received power is P |g|^2).
double intra_cluster_gain_winner(Point x, Point y, const ChannelModel& model, RandomStream& rng);

/// Linear inter-cluster power gain |h|^2 l for the B4 variant.
double inter_cluster_gain_winner(Point x, Point y, int penetrations, const ChannelModel& model,
                                 RandomStream& rng);

/// Cluster-crossing count between translated-grid centers, max(1, round(||c1-c2||_inf / spacing)).
int grid_penetration_count(Point c1, Point c2, double spacing);

/// Draw |g|^2 for a link inside one cluster under either model.
double sample_intra_gain(Point x, Point y, const ChannelModel& model, RandomStream& rng);

/// Draw |h|^2 l for a link between clusters under either model.
double sample_inter_gain(Point x, Point y, int penetrations, const ChannelModel& model,
                         RandomStream& rng);

/// P(|g|^2 > threshold) for a link of length d inside one cluster.
double intra_gain_ccdf(double threshold, double d, const ChannelModel& model);

}  // namespace d2d
