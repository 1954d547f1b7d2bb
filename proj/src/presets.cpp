#include <map>

#include "d2d/experiment.hpp"

namespace d2d {

namespace {

// One experiment setup per preset. Values chosen here rather than fixed by the
// setup are listed in the README (fig4: library size, Zipf exponent, proposal intensity).
const std::map<std::string, const char*, std::less<>>& preset_table() {
  static const std::map<std::string, const char*, std::less<>> table{
      {"fig4", R"({
  "description": "Far-field LT approximation versus simulated LT, Matern parents",
  "seed": 4, "replicates": 2000,
  "network": {
    "parent": {"kind": "matern", "lambda": 2e-4, "delta": 100},
    "cluster_radius": 50, "lambda_u": 0.072, "lambda_r": 0.018,
    "content": {"library_size": 500, "cache_size": 6, "zipf_gamma": 0.6},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.5}
  },
  "lt_compare": {"eta": {"min": 1e5, "max": 1e9, "points": 17, "spacing": "log"},
                 "offsets": [0, 35], "observer_slots": 8}
})"},
      {"fig5", R"({
  "description": "Global trade-off inner bound for three library sizes",
  "seed": 5, "replicates": 1000,
  "network": {
    "parent": {"kind": "matern", "lambda": 1e-4, "delta": 100},
    "cluster_radius": 50, "lambda_u": 0.012, "lambda_r": 0.003,
    "content": {"library_size": 500, "cache_size": 6, "zipf_gamma": 0.6},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.05},
    "simulation": {"law_replicates": 4000}
  },
  "sweep": {
    "cluster_radii": {"min": 15, "max": 180, "points": 12, "spacing": "log"},
    "rates": {"min": 1e-5, "max": 2, "points": 12, "spacing": "log"},
    "proposal_intensities": {"min": 1e-6, "max": 1e-3, "points": 12, "spacing": "log"},
    "clearance_factors": [1, 1.25, 1.5, 2],
    "constraints": {"min": 0, "max": 0.42, "points": 22}
  },
  "series": [
    {"label": "L1000", "patch": {"network": {"content": {"library_size": 1000}}}},
    {"label": "L500", "patch": {"network": {"content": {"library_size": 500}}}},
    {"label": "L100", "patch": {"network": {"content": {"library_size": 100}}}}
  ]
})"},
      {"fig6", R"({
  "description": "Local trade-off inner bound under parent-density floors",
  "seed": 6, "replicates": 1000,
  "network": {
    "parent": {"kind": "matern", "lambda": 1e-4, "delta": 100},
    "cluster_radius": 50, "lambda_u": 0.012, "lambda_r": 0.003,
    "content": {"library_size": 500, "cache_size": 6, "zipf_gamma": 0.6},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.05},
    "simulation": {"law_replicates": 4000}
  },
  "sweep": {
    "cluster_radii": {"min": 10, "max": 180, "points": 12, "spacing": "log"},
    "rates": {"min": 1e-5, "max": 2, "points": 12, "spacing": "log"},
    "proposal_intensities": {"min": 1e-6, "max": 1e-3, "points": 12, "spacing": "log"},
    "clearance_factors": [1, 1.25, 1.5, 2],
    "constraints": {"min": 0, "max": 0.42, "points": 22}
  },
  "series": [
    {"label": "lt3e-6", "patch": {"sweep": {"density_floor": 3e-6}}},
    {"label": "lt1e-5", "patch": {"sweep": {"density_floor": 1e-5}}},
    {"label": "lt3e-5", "patch": {"sweep": {"density_floor": 3e-5}}},
    {"label": "lt5e-5", "patch": {"sweep": {"density_floor": 5e-5}}}
  ]
})"},
      {"fig7", R"({
  "description": "Local-global trade-off inner bound at three attempted rates",
  "seed": 7, "replicates": 1000,
  "network": {
    "parent": {"kind": "matern", "lambda": 1e-4, "delta": 100},
    "cluster_radius": 50, "lambda_u": 0.012, "lambda_r": 0.003,
    "content": {"library_size": 500, "cache_size": 6, "zipf_gamma": 0.6},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.05},
    "simulation": {"law_replicates": 4000}
  },
  "sweep": {
    "cluster_radii": {"min": 10, "max": 180, "points": 12, "spacing": "log"},
    "proposal_intensities": {"min": 1e-6, "max": 1e-3, "points": 12, "spacing": "log"},
    "clearance_factors": [1, 1.25, 1.5, 2],
    "constraints": {"min": 0, "max": 1, "points": 21}
  },
  "series": [
    {"label": "R0.048", "patch": {"sweep": {"fixed_rate": 0.048}}},
    {"label": "R0.09", "patch": {"sweep": {"fixed_rate": 0.09}}},
    {"label": "R0.24", "patch": {"sweep": {"fixed_rate": 0.24}}}
  ]
})"},
      {"fig8-matern-winner", R"({
  "description": "Local trade-off, Matern parents: Winner II shadowing versus Rayleigh",
  "seed": 8, "replicates": 2000,
  "network": {
    "parent": {"kind": "matern", "lambda": 2e-4, "delta": 40},
    "cluster_radius": 20, "lambda_u": 0.0278, "lambda_r": 0.0278,
    "content": {"library_size": 300, "cache_size": 5, "zipf_gamma": 0.4},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.1}
  },
  "sweep": {
    "cluster_radii": [20], "proposal_intensities": [2e-4], "clearance_factors": [1],
    "rates": {"min": 1e-3, "max": 4, "points": 36, "spacing": "log"},
    "constraints": {"min": 0, "max": 0.25, "points": 26}
  },
  "series": [
    {"label": "M5-eps0.1-rayleigh", "patch": {"network": {"content": {"cache_size": 5}, "strategy": {"eps": 0.1}}}},
    {"label": "M10-eps0.1-rayleigh", "patch": {"network": {"content": {"cache_size": 10}, "strategy": {"eps": 0.1}}}},
    {"label": "M20-eps0.2-rayleigh", "patch": {"network": {"content": {"cache_size": 20}, "strategy": {"eps": 0.2}}}},
    {"label": "M5-eps0-lognormal", "patch": {"network": {"content": {"cache_size": 5}, "strategy": {"eps": 0},
                                                        "channel": {"kind": "winner"}}}},
    {"label": "M10-eps0-lognormal", "patch": {"network": {"content": {"cache_size": 10}, "strategy": {"eps": 0},
                                                         "channel": {"kind": "winner"}}}},
    {"label": "M20-eps0.1-lognormal", "patch": {"network": {"content": {"cache_size": 20}, "strategy": {"eps": 0.1},
                                                           "channel": {"kind": "winner"}}}}
  ]
})"},
      {"fig9-grid-winner", R"({
  "description": "Local trade-off, translated-grid parents: Winner II shadowing versus Rayleigh",
  "seed": 9, "replicates": 2000,
  "network": {
    "parent": {"kind": "grid", "delta": 50},
    "cluster_radius": 20, "lambda_u": 0.0278, "lambda_r": 0.0278,
    "content": {"library_size": 300, "cache_size": 5, "zipf_gamma": 0.4},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.1}
  },
  "sweep": {
    "cluster_radii": [20], "clearance_factors": [1.25],
    "rates": {"min": 1e-3, "max": 4, "points": 36, "spacing": "log"},
    "constraints": {"min": 0, "max": 0.25, "points": 26}
  },
  "series": [
    {"label": "M5-eps0.1-rayleigh", "patch": {"network": {"content": {"cache_size": 5}, "strategy": {"eps": 0.1}}}},
    {"label": "M10-eps0.1-rayleigh", "patch": {"network": {"content": {"cache_size": 10}, "strategy": {"eps": 0.1}}}},
    {"label": "M20-eps0.2-rayleigh", "patch": {"network": {"content": {"cache_size": 20}, "strategy": {"eps": 0.2}}}},
    {"label": "M5-eps0-lognormal", "patch": {"network": {"content": {"cache_size": 5}, "strategy": {"eps": 0},
                                                        "channel": {"kind": "winner"}}}},
    {"label": "M10-eps0-lognormal", "patch": {"network": {"content": {"cache_size": 10}, "strategy": {"eps": 0},
                                                         "channel": {"kind": "winner"}}}},
    {"label": "M20-eps0.1-lognormal", "patch": {"network": {"content": {"cache_size": 20}, "strategy": {"eps": 0.1},
                                                           "channel": {"kind": "winner"}}}}
  ]
})"},
      {"small", R"({
  "description": "Small network for brute-force cross-checks and the validate suite",
  "seed": 11, "replicates": 4000,
  "network": {
    "parent": {"kind": "matern", "lambda": 2e-4, "delta": 40},
    "cluster_radius": 20, "lambda_u": 0.01, "lambda_r": 0.01,
    "content": {"library_size": 10, "cache_size": 2, "zipf_gamma": 0.6},
    "channel": {"kind": "rayleigh", "alpha": 4},
    "strategy": {"eps": 0.5},
    "simulation": {"window_factor": 15}
  },
  "lt_compare": {"eta": {"min": 1e4, "max": 1e8, "points": 10, "spacing": "log"},
                 "offsets": [0, 15], "observer_slots": 4},
  "sweep": {
    "cluster_radii": [20], "proposal_intensities": [2e-4], "clearance_factors": [1],
    "rates": {"min": 1e-3, "max": 1, "points": 8, "spacing": "log"},
    "constraints": {"min": 0, "max": 0.2, "points": 5}
  }
})"},
  };
  return table;
}

}  // namespace

nlohmann::json preset(std::string_view name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return nlohmann::json::parse(it->second);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : preset_table()) names.push_back(name);
  return names;
}

}  // namespace d2d
