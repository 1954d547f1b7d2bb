#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "d2d/cluster.hpp"
#include "d2d/config.hpp"
#include "d2d/geometry.hpp"
#include "d2d/rng.hpp"

namespace d2d {

/// Raised when a quadrature or estimator fails to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distribution of the slot count W of a cluster: the probability that the
/// cluster has no matched request, and P(W = 2^i | N_m >= 1) for i = 0..log2(max slots).
struct SlotCountLaw {
  double empty_probability = 0.0;
  std::vector<double> pmf;

  int max_slots() const { return pmf.empty() ? 0 : 1 << (static_cast<int>(pmf.size()) - 1); }
  /// Draws W, or 0 for a cluster with nothing scheduled.
  int sample(RandomStream& rng) const;
  /// Throws std::invalid_argument unless the pmf sums to one within 1e-9.
  void validate() const;
};

/// Empirical law of W(min(N_m, max_matches), eps) over independent cluster draws.
SlotCountLaw estimate_slot_count_law(const NetworkConfig& cfg, int max_matches, int replicates,
                                     std::uint64_t seed);

/// The law implied by a fixed sample of match counts.
SlotCountLaw slot_count_law_from_counts(std::span<const int> match_counts, double eps, int max_matches);

enum class BMode {
  WorstCaseB1,  // every sub-slot transmitter distinct
  RandomB,      // sub-slots allocated uniformly at random among the transmitters
};

struct InterferingCluster {
  Point center;
  int slots = 0;          // W_x
  int penetrations = 1;   // clusters crossed towards the origin (Winner inter law)
  std::uint64_t key = 0;  // names the stream of transmitter positions
};

/// Clusters around a typical cluster at the origin (which is excluded),
/// truncated to the simulation window.
struct InterferenceField {
  std::vector<InterferingCluster> clusters;
  double cluster_radius = 1.0;
  std::uint64_t seed = 0;
  /// Place every transmitter at its cluster center (the far-field picture).
  bool at_centers = false;
};

/// Palm sample of the interfering clusters, W_x drawn from `law`.
InterferenceField sample_interference_field(const NetworkConfig& cfg, const SlotCountLaw& law,
                                            std::uint64_t seed, std::uint64_t replicate);

/// Active transmitters of one interfering cluster during an observer slot
/// when the observer runs n1 slots: positions and their activity counts B_j.
struct ActiveSet {
  std::vector<Point> positions;
  std::vector<int> activity;
  double weight = 1.0;  // n1 / W_x when W_x > n1, else 1
};

ActiveSet active_transmitters(const InterferenceField& field, const InterferingCluster& cluster, int n1,
                              BMode mode);

/// Time-averaged interference power at d (origin-cluster coordinates) seen by
/// a receiver whose cluster runs n1 slots. Transmitter placement and the
/// random-B allocation come from the field's own streams, so both modes share
/// them; fading comes from `fading`.
double interference_at(const InterferenceField& field, Point d, int n1, const ChannelModel& channel,
                       BMode mode, RandomStream& fading);

/// Mean received power P w B_j l(x_j, d) of every active transmitter; under
/// Rayleigh fading each term is exponential with this mean.
std::vector<double> rayleigh_interference_means(const InterferenceField& field, Point d, int n1,
                                                const ChannelModel& channel, BMode mode);

/// prod_j 1 / (1 + eta m_j): the LT of a sum of independent exponentials.
double rayleigh_laplace(std::span<const double> means, double eta);

/// E[exp(-eta I(d, n1)) | field] under Rayleigh fading, in closed form.
double rayleigh_laplace_given_field(const InterferenceField& field, Point d, int n1,
                                    const ChannelModel& channel, BMode mode, double eta);

/// (1/n1) log2(1 + P g / I); +infinity when I = 0.
double achievable_rate_bound(double power, double gain, double interference, int n1);

/// (1/n1) times the mean over interference phases of log2(1 + P g / I_i).
double exact_slot_rate_oracle(double power, double gain, std::span<const double> phases, int n1);

}  // namespace d2d
