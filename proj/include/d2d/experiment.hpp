#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "d2d/config.hpp"
#include "d2d/tradeoff.hpp"

namespace d2d {

/// Malformed or inconsistent experiment description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LtCompareParams {
  std::vector<double> etas;
  std::vector<double> offsets{0.0};  // |d|, placed on the x axis
  int observer_slots = 8;            // n1
};

struct DensityCheckParams {
  std::vector<double> products{0.5, 2.0, 10.0};  // lambda pi delta^2
  double window_factor = 20.0;                   // window radius in units of delta
};

struct SweepParams {
  SweepGrid grid;
  double fixed_rate = 0.05;  // attempted rate of the local-global sweep
};

/// One named variant of the base experiment, given as a JSON merge patch.
struct Series {
  std::string label;
  nlohmann::json patch;
};

struct ExperimentConfig {
  NetworkConfig network;
  std::uint64_t seed = 0;
  std::size_t replicates = 2000;
  LtCompareParams lt_compare;
  DensityCheckParams density_check;
  SweepParams sweep;
  std::vector<Series> series;
  nlohmann::json source;  // the effective document, without the series list
};

/// Parses a full experiment document. Unknown keys are rejected.
ExperimentConfig parse_experiment(const nlohmann::json& doc);

NetworkConfig network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const NetworkConfig& cfg);

/// Axis given as an explicit list or as {"min", "max", "points", "spacing": "linear"|"log"}.
std::vector<double> axis_from_json(const nlohmann::json& j, std::string_view name);

/// Base document with one series patch applied (its "series" list removed).
nlohmann::json apply_series(const nlohmann::json& doc, const Series& series);

nlohmann::json preset(std::string_view name);
std::vector<std::string> preset_names();

/// FNV-1a hash of the canonical (sorted-key, compact) serialization, as 16 hex digits.
std::string config_hash(const nlohmann::json& doc);

}  // namespace d2d
