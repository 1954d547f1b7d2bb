#include "d2d/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

namespace d2d {

using nlohmann::json;

namespace {

void allow_keys(const json& j, std::initializer_list<std::string_view> keys, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& item : j.items())
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
}

template <class T>
T get_or(const json& j, const char* key, T fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

template <class T>
T require(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  return get_or<T>(j, key, T{}, where);
}

double number_or(const json& j, const char* key, double fallback, std::string_view where) {
  if (j.contains(key) && !j.at(key).is_number())
    throw ConfigError(std::string(where) + "." + key + ": expected a number");
  return get_or<double>(j, key, fallback, where);
}

WinnerLawDb law_from_json(const json& j, WinnerLawDb law, std::string_view where) {
  allow_keys(j, {"slope", "intercept", "frequency", "sigma"}, where);
  law.slope = number_or(j, "slope", law.slope, where);
  law.intercept = number_or(j, "intercept", law.intercept, where);
  law.frequency = number_or(j, "frequency", law.frequency, where);
  law.sigma = number_or(j, "sigma", law.sigma, where);
  return law;
}

json law_to_json(const WinnerLawDb& law) {
  return {{"slope", law.slope}, {"intercept", law.intercept}, {"frequency", law.frequency}, {"sigma", law.sigma}};
}

ChannelModel channel_from_json(const json& j) {
  constexpr std::string_view where = "network.channel";
  allow_keys(j, {"kind", "alpha", "path_loss_constant", "power", "noise_power", "winner"}, where);
  ChannelModel ch;
  const auto kind = get_or<std::string>(j, "kind", "rayleigh", where);
  if (kind == "rayleigh") ch.kind = ChannelKind::RayleighPowerLaw;
  else if (kind == "winner") ch.kind = ChannelKind::WinnerLognormal;
  else throw ConfigError("network.channel.kind: expected 'rayleigh' or 'winner'");
  ch.alpha = number_or(j, "alpha", ch.alpha, where);
  ch.path_loss_constant = number_or(j, "path_loss_constant", ch.path_loss_constant, where);
  ch.power = number_or(j, "power", ch.power, where);
  ch.noise_power = number_or(j, "noise_power", ch.noise_power, where);
  if (j.contains("winner")) {
    const json& w = j.at("winner");
    constexpr std::string_view ww = "network.channel.winner";
    allow_keys(w, {"carrier_ghz", "tx_gain_db", "rx_gain_db", "tx_power_dbm", "los", "nlos", "wall_loss_db",
                   "wall_spacing", "los_breakpoint", "inter", "penetration_loss_db"},
               ww);
    WinnerParams& p = ch.winner;
    p.carrier_ghz = number_or(w, "carrier_ghz", p.carrier_ghz, ww);
    p.tx_gain_db = number_or(w, "tx_gain_db", p.tx_gain_db, ww);
    p.rx_gain_db = number_or(w, "rx_gain_db", p.rx_gain_db, ww);
    p.tx_power_dbm = number_or(w, "tx_power_dbm", p.tx_power_dbm, ww);
    if (w.contains("los")) p.los = law_from_json(w.at("los"), p.los, "network.channel.winner.los");
    if (w.contains("nlos")) p.nlos = law_from_json(w.at("nlos"), p.nlos, "network.channel.winner.nlos");
    if (w.contains("inter")) p.inter = law_from_json(w.at("inter"), p.inter, "network.channel.winner.inter");
    p.wall_loss_db = number_or(w, "wall_loss_db", p.wall_loss_db, ww);
    p.wall_spacing = number_or(w, "wall_spacing", p.wall_spacing, ww);
    p.los_breakpoint = number_or(w, "los_breakpoint", p.los_breakpoint, ww);
    p.penetration_loss_db = number_or(w, "penetration_loss_db", p.penetration_loss_db, ww);
  }
  return ch;
}

ContentConfig content_from_json(const json& j) {
  constexpr std::string_view where = "network.content";
  allow_keys(j, {"library_size", "cache_size", "zipf_gamma", "request_pmf", "cache_pmf"}, where);
  const int library = require<int>(j, "library_size", where);
  const int cache = require<int>(j, "cache_size", where);
  const double gamma = number_or(j, "zipf_gamma", 0.0, where);
  if (library < 1 || cache < 1) throw ConfigError("network.content: sizes must be >= 1");
  if (gamma < 0.0) throw ConfigError("network.content.zipf_gamma: must be >= 0");
  ContentConfig content = ContentConfig::zipf(library, cache, gamma);
  auto normalized = [&](const char* key) {
    auto pmf = get_or<std::vector<double>>(j, key, {}, where);
    double total = 0.0;
    for (double p : pmf) total += p;
    if (!(total > 0.0)) throw ConfigError(std::string(where) + "." + key + ": needs positive mass");
    for (double& p : pmf) p /= total;
    return pmf;
  };
  if (j.contains("request_pmf")) content.request_pmf = normalized("request_pmf");
  if (j.contains("cache_pmf")) content.cache_pmf = normalized("cache_pmf");
  return content;
}

}  // namespace

NetworkConfig network_from_json(const json& j) {
  constexpr std::string_view where = "network";
  allow_keys(j, {"parent", "cluster_radius", "lambda_u", "lambda_r", "content", "channel", "strategy", "simulation"},
             where);
  NetworkConfig cfg;
  const json& parent = j.contains("parent") ? j.at("parent") : throw ConfigError("network: missing 'parent'");
  allow_keys(parent, {"kind", "lambda", "delta"}, "network.parent");
  const auto kind = get_or<std::string>(parent, "kind", "matern", "network.parent");
  if (kind == "matern") cfg.parent.kind = ParentKind::MaternII;
  else if (kind == "grid") cfg.parent.kind = ParentKind::TranslatedGrid;
  else throw ConfigError("network.parent.kind: expected 'matern' or 'grid'");
  cfg.parent.lambda = number_or(parent, "lambda", 0.0, "network.parent");
  cfg.parent.delta = require<double>(parent, "delta", "network.parent");
  cfg.cluster_radius = require<double>(j, "cluster_radius", where);
  cfg.lambda_u = number_or(j, "lambda_u", 0.0, where);
  cfg.lambda_r = number_or(j, "lambda_r", 0.0, where);
  if (j.contains("content")) cfg.content = content_from_json(j.at("content"));
  if (j.contains("channel")) cfg.channel = channel_from_json(j.at("channel"));
  if (j.contains("strategy")) {
    const json& s = j.at("strategy");
    allow_keys(s, {"eps", "max_matches"}, "network.strategy");
    cfg.strategy.eps = number_or(s, "eps", cfg.strategy.eps, "network.strategy");
    cfg.strategy.max_matches = get_or<int>(s, "max_matches", cfg.strategy.max_matches, "network.strategy");
  }
  if (j.contains("simulation")) {
    const json& s = j.at("simulation");
    allow_keys(s, {"window_factor", "law_replicates"}, "network.simulation");
    cfg.simulation.window_factor = number_or(s, "window_factor", cfg.simulation.window_factor, "network.simulation");
    cfg.simulation.law_replicates =
        get_or<int>(s, "law_replicates", cfg.simulation.law_replicates, "network.simulation");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

json network_to_json(const NetworkConfig& cfg) {
  const WinnerParams& w = cfg.channel.winner;
  return {
      {"parent",
       {{"kind", cfg.parent.kind == ParentKind::MaternII ? "matern" : "grid"},
        {"lambda", cfg.parent.lambda},
        {"delta", cfg.parent.delta}}},
      {"cluster_radius", cfg.cluster_radius},
      {"lambda_u", cfg.lambda_u},
      {"lambda_r", cfg.lambda_r},
      {"content",
       {{"library_size", cfg.content.library_size},
        {"cache_size", cfg.content.cache_size},
        {"zipf_gamma", cfg.content.zipf_gamma},
        {"request_pmf", cfg.content.request_pmf},
        {"cache_pmf", cfg.content.cache_pmf}}},
      {"channel",
       {{"kind", cfg.channel.kind == ChannelKind::RayleighPowerLaw ? "rayleigh" : "winner"},
        {"alpha", cfg.channel.alpha},
        {"path_loss_constant", cfg.channel.path_loss_constant},
        {"power", cfg.channel.power},
        {"noise_power", cfg.channel.noise_power},
        {"winner",
         {{"carrier_ghz", w.carrier_ghz},
          {"tx_gain_db", w.tx_gain_db},
          {"rx_gain_db", w.rx_gain_db},
          {"tx_power_dbm", w.tx_power_dbm},
          {"los", law_to_json(w.los)},
          {"nlos", law_to_json(w.nlos)},
          {"wall_loss_db", w.wall_loss_db},
          {"wall_spacing", w.wall_spacing},
          {"los_breakpoint", w.los_breakpoint},
          {"inter", law_to_json(w.inter)},
          {"penetration_loss_db", w.penetration_loss_db}}}}},
      {"strategy", {{"eps", cfg.strategy.eps}, {"max_matches", cfg.strategy.max_matches}}},
      {"simulation",
       {{"window_factor", cfg.simulation.window_factor}, {"law_replicates", cfg.simulation.law_replicates}}},
  };
}

std::vector<double> axis_from_json(const json& j, std::string_view name) {
  std::vector<double> values;
  if (j.is_array()) {
    for (const json& v : j) {
      if (!v.is_number()) throw ConfigError(std::string(name) + ": expected numbers");
      values.push_back(v.get<double>());
    }
  } else if (j.is_number()) {
    values.push_back(j.get<double>());
  } else if (j.is_object()) {
    allow_keys(j, {"min", "max", "points", "spacing"}, name);
    const double lo = require<double>(j, "min", name);
    const double hi = require<double>(j, "max", name);
    const int points = require<int>(j, "points", name);
    const auto spacing = get_or<std::string>(j, "spacing", "linear", name);
    if (points < 1) throw ConfigError(std::string(name) + ": points must be >= 1");
    if (hi < lo) throw ConfigError(std::string(name) + ": max below min");
    const bool log = spacing == "log";
    if (!log && spacing != "linear") throw ConfigError(std::string(name) + ": spacing must be 'linear' or 'log'");
    if (log && !(lo > 0.0)) throw ConfigError(std::string(name) + ": log spacing needs min > 0");
    for (int i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
      values.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
  } else {
    throw ConfigError(std::string(name) + ": expected a list or a range object");
  }
  if (values.empty()) throw ConfigError(std::string(name) + ": empty axis");
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError(std::string(name) + ": non-finite value");
  return values;
}

ExperimentConfig parse_experiment(const json& doc) {
  allow_keys(doc, {"description", "seed", "replicates", "network", "lt_compare", "density_check", "sweep", "series"},
             "config");
  ExperimentConfig cfg;
  if (!doc.contains("network")) throw ConfigError("config: missing 'network'");
  cfg.network = network_from_json(doc.at("network"));
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
      throw ConfigError("config.seed: expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  const long long replicates = get_or<long long>(doc, "replicates", 2000, "config");
  if (replicates < 2) throw ConfigError("config.replicates: must be >= 2");
  cfg.replicates = static_cast<std::size_t>(replicates);

  if (doc.contains("lt_compare")) {
    const json& j = doc.at("lt_compare");
    allow_keys(j, {"eta", "offsets", "observer_slots"}, "lt_compare");
    if (j.contains("eta")) cfg.lt_compare.etas = axis_from_json(j.at("eta"), "lt_compare.eta");
    if (j.contains("offsets")) cfg.lt_compare.offsets = axis_from_json(j.at("offsets"), "lt_compare.offsets");
    cfg.lt_compare.observer_slots = get_or<int>(j, "observer_slots", 8, "lt_compare");
    const int n1 = cfg.lt_compare.observer_slots;
    if (n1 < 1 || (n1 & (n1 - 1)) != 0) throw ConfigError("lt_compare.observer_slots: must be a power of two");
    for (double e : cfg.lt_compare.etas)
      if (e < 0.0) throw ConfigError("lt_compare.eta: must be >= 0");
    for (double d : cfg.lt_compare.offsets)
      if (d < 0.0 || d > cfg.network.cluster_radius)
        throw ConfigError("lt_compare.offsets: must lie inside the cluster");
  }
  if (doc.contains("density_check")) {
    const json& j = doc.at("density_check");
    allow_keys(j, {"products", "window_factor"}, "density_check");
    if (j.contains("products")) cfg.density_check.products = axis_from_json(j.at("products"), "density_check.products");
    cfg.density_check.window_factor = number_or(j, "window_factor", cfg.density_check.window_factor, "density_check");
    if (!(cfg.density_check.window_factor > 0.0)) throw ConfigError("density_check.window_factor: must be positive");
  }
  if (doc.contains("sweep")) {
    const json& j = doc.at("sweep");
    allow_keys(j, {"cluster_radii", "rates", "proposal_intensities", "clearance_factors", "constraints",
                   "density_floor", "fixed_rate"},
               "sweep");
    SweepGrid& g = cfg.sweep.grid;
    if (j.contains("cluster_radii")) g.cluster_radii = axis_from_json(j.at("cluster_radii"), "sweep.cluster_radii");
    if (j.contains("rates")) g.rates = axis_from_json(j.at("rates"), "sweep.rates");
    if (j.contains("proposal_intensities"))
      g.proposal_intensities = axis_from_json(j.at("proposal_intensities"), "sweep.proposal_intensities");
    if (j.contains("clearance_factors"))
      g.clearance_factors = axis_from_json(j.at("clearance_factors"), "sweep.clearance_factors");
    if (j.contains("constraints")) g.constraints = axis_from_json(j.at("constraints"), "sweep.constraints");
    g.density_floor = number_or(j, "density_floor", 0.0, "sweep");
    cfg.sweep.fixed_rate = number_or(j, "fixed_rate", cfg.sweep.fixed_rate, "sweep");
  }
  if (doc.contains("series")) {
    const json& list = doc.at("series");
    if (!list.is_array()) throw ConfigError("series: expected a list");
    for (const json& s : list) {
      allow_keys(s, {"label", "patch"}, "series entry");
      Series entry{require<std::string>(s, "label", "series entry"), s.value("patch", json::object())};
      if (entry.label.empty() ||
          entry.label.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.") !=
              std::string::npos)
        throw ConfigError("series label '" + entry.label + "' must be alphanumeric, '-', '_' or '.'");
      if (!entry.patch.is_object()) throw ConfigError("series patch must be an object");
      cfg.series.push_back(std::move(entry));
    }
  }
  cfg.source = doc;
  cfg.source.erase("series");
  return cfg;
}

json apply_series(const json& doc, const Series& series) {
  json patched = doc;
  patched.erase("series");
  patched.merge_patch(series.patch);
  return patched;
}

std::string config_hash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace d2d
