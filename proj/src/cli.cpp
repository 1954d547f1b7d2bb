#include "d2d/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "d2d/experiment.hpp"
#include "d2d/interference.hpp"
#include "d2d/laplace.hpp"
#include "d2d/metrics.hpp"
#include "d2d/parallel.hpp"
#include "d2d/tradeoff.hpp"
#include "d2d/validation.hpp"

namespace d2d {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt(bool v) { return v ? "1" : "0"; }
std::string fmt(const std::string& v) { return v; }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

  template <class... Ts>
  void row(const Ts&... values) {
    std::vector<std::string> cells{fmt(values)...};
    if (cells.size() != header_.size()) throw std::logic_error("csv: row width differs from header");
    rows_.push_back(std::move(cells));
  }

  void write(std::ostream& out, const std::string& metadata) const {
    out << "# " << metadata << '\n';
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
  }

 private:
  static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

MetricOptions metric_options(const ExperimentConfig& cfg) {
  MetricOptions o;
  o.seed = cfg.seed;
  o.replicates = cfg.replicates;
  return o;
}

Csv lt_compare(const ExperimentConfig& cfg) {
  const NetworkConfig& net = cfg.network;
  if (net.channel.kind != ChannelKind::RayleighPowerLaw)
    throw ConfigError("lt-compare: the LT approximation needs the Rayleigh channel");
  const auto& params = cfg.lt_compare;
  if (params.etas.empty()) throw ConfigError("lt-compare: lt_compare.eta is required");
  const ClusterStatistics stats = cluster_statistics(net, cfg.seed);
  const std::size_t n = cfg.replicates;
  const std::size_t ne = params.etas.size();
  const std::size_t no = params.offsets.size();
  // Two references: interferers at their true positions, and collapsed to
  // their cluster centers, which isolates the Poisson substitution.
  std::vector<double> uniform(n * no * ne), centered(n * no * ne);
  parallel_for(n, [&](std::size_t i) {
    InterferenceField field = sample_interference_field(net, stats.law, cfg.seed, i);
    for (int pass = 0; pass < 2; ++pass) {
      field.at_centers = pass == 1;
      std::vector<double>& out = pass == 1 ? centered : uniform;
      for (std::size_t o = 0; o < no; ++o) {
        const auto means = rayleigh_interference_means(field, {params.offsets[o], 0.0}, params.observer_slots,
                                                       net.channel, BMode::WorstCaseB1);
        for (std::size_t e = 0; e < ne; ++e) out[(i * no + o) * ne + e] = rayleigh_laplace(means, params.etas[e]);
      }
    }
  });
  Csv csv({"eta", "offset", "lt_mc", "lt_approx", "mc_std_err", "lt_mc_uniform", "mc_uniform_std_err"});
  std::vector<double> column(n);
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t i = 0; i < n; ++i) column[i] = centered[(i * no + o) * ne + e];
      const MetricEstimate mc = batch_means(column, EstimateMethod::FullMonteCarlo);
      for (std::size_t i = 0; i < n; ++i) column[i] = uniform[(i * no + o) * ne + e];
      const MetricEstimate mc_uniform = batch_means(column, EstimateMethod::FullMonteCarlo);
      const double approx =
          lt_interference_approx(params.etas[e], {params.offsets[o], 0.0}, params.observer_slots, net, stats.law);
      csv.row(params.etas[e], params.offsets[o], mc.value, approx, mc.std_error, mc_uniform.value,
              mc_uniform.std_error);
    }
  }
  return csv;
}

Csv tl_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.grid.rates.empty()) throw ConfigError("tl-sweep: sweep.rates is required");
  const auto points = evaluate_metrics(cfg.network, cfg.sweep.grid.rates, metric_options(cfg));
  const MetricBounds bounds = metric_bounds(cfg.network);
  Csv csv({"rate", "t_local", "t_local_se", "t_global", "t_global_se", "avg_rate", "avg_rate_se",
           "match_probability", "method"});
  for (const MetricPoint& p : points)
    csv.row(p.rate, p.local.value, p.local.std_error, p.global.value, p.global.std_error, p.average_rate.value,
            p.average_rate.std_error, bounds.match_probability, std::string(to_string(p.local.method)));
  return csv;
}

Csv frontier_csv(const std::vector<TradeoffPoint>& frontier, const char* constraint, const char* objective) {
  Csv csv({constraint, "feasible", objective, std::string(objective) + "_se", "cluster_radius", "delta", "lambda",
           "parent_density", "rate", "t_local", "t_local_se", "avg_rate", "avg_rate_se"});
  for (const TradeoffPoint& t : frontier)
    csv.row(t.constraint, t.feasible, t.objective.value, t.objective.std_error, t.cluster_radius, t.delta, t.lambda,
            t.parent_density, t.rate, t.local.value, t.local.std_error, t.average_rate.value,
            t.average_rate.std_error);
  return csv;
}

void require_sweep(const ExperimentConfig& cfg, bool needs_rates) {
  const SweepGrid& g = cfg.sweep.grid;
  if (g.cluster_radii.empty() || g.constraints.empty() || (needs_rates && g.rates.empty()))
    throw ConfigError("sweep: cluster_radii, constraints and rates are required");
  if (cfg.network.parent.kind == ParentKind::MaternII && g.proposal_intensities.empty())
    throw ConfigError("sweep: proposal_intensities is required for Matern parents");
}

Csv tradeoff_global(const ExperimentConfig& cfg) {
  require_sweep(cfg, true);
  return frontier_csv(optimize_global(cfg.sweep.grid, cfg.network, metric_options(cfg)), "r", "max_t_global");
}

Csv tradeoff_local(const ExperimentConfig& cfg) {
  require_sweep(cfg, true);
  return frontier_csv(optimize_local(cfg.sweep.grid, cfg.network, metric_options(cfg)), "r", "max_t_local");
}

Csv tradeoff_local_global(const ExperimentConfig& cfg) {
  require_sweep(cfg, false);
  return frontier_csv(optimize_local_global(cfg.sweep.grid, cfg.network, cfg.sweep.fixed_rate, metric_options(cfg)),
                      "t_c", "max_t_global");
}

Csv density_check(const ExperimentConfig& cfg) {
  const double delta = cfg.network.parent.delta;
  Csv csv({"lambda_pi_delta2", "lambda", "delta", "empirical_density", "std_error", "formula_density",
           "relative_error"});
  for (double product : cfg.density_check.products) {
    const double lambda = product / (std::numbers::pi * delta * delta);
    const DensityCheck c =
        matern_density_check(lambda, delta, cfg.density_check.window_factor, cfg.replicates, cfg.seed);
    csv.row(product, lambda, delta, c.empirical, c.std_error, c.formula, c.relative_error);
  }
  return csv;
}

Csv validate(const ExperimentConfig& cfg, bool& all_passed) {
  const NetworkConfig& net = cfg.network;
  Csv csv({"property", "statistic", "threshold", "passed"});
  auto record = [&](const char* name, double statistic, double threshold, bool passed) {
    csv.row(std::string(name), statistic, threshold, passed);
    all_passed = all_passed && passed;
  };
  if (net.parent.kind == ParentKind::MaternII) {
    const DensityCheck d = matern_density_check(net.parent.lambda, net.parent.delta, cfg.density_check.window_factor,
                                                cfg.replicates, cfg.seed);
    const double z = std::abs(d.empirical - d.formula) / d.std_error;
    record("matern_density_z", z, 3.0, z < 3.0);
  }
  const MatchCheck m = match_probability_check(net, cfg.replicates, cfg.seed);
  const double zm = m.std_error > 0.0 ? std::abs(m.empirical - m.closed_form) / m.std_error : 0.0;
  record("match_probability_z", zm, 3.0, zm < 3.0);

  const SlotRateDominance s = slot_rate_dominance_check(1000, cfg.seed);
  record("slot_rate_bound_violations", static_cast<double>(s.violations + s.strict_failures), 0.0,
         s.violations + s.strict_failures == 0);

  if (net.channel.kind == ChannelKind::RayleighPowerLaw && !cfg.lt_compare.etas.empty()) {
    const ClusterStatistics stats = cluster_statistics(net, cfg.seed);
    const LtComparison lt = b_mode_comparison(net, stats.law, 1, {cfg.lt_compare.offsets.front(), 0.0},
                                              cfg.lt_compare.etas, cfg.replicates, cfg.seed);
    // Distinct sub-slot transmitters average out fading, which can only lower the LT.
    double worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < lt.etas.size(); ++e)
      worst_margin = std::max(worst_margin, (lt.worst_case[e] - lt.random[e]) - 3.0 * lt.diff_se[e]);
    record("b1_lt_excess_over_3se", worst_margin, 0.0, worst_margin <= 0.0);
  }

  const double radius = 3.0 * net.parent.delta;
  const CampbellCheck c = campbell_identity_check(net, radius, cfg.sweep.fixed_rate, metric_options(cfg));
  record("campbell_identity_z", c.z_score, 3.0, c.z_score < 3.0);
  return csv;
}

struct Invocation {
  std::string config_path;
  std::string preset_name;
  std::int64_t seed = -1;
  std::int64_t replicates = -1;
  std::string out;
  unsigned threads = 0;
};

nlohmann::json load_document(const Invocation& inv) {
  nlohmann::json doc = nlohmann::json::object();
  if (!inv.preset_name.empty()) doc = preset(inv.preset_name);
  if (!inv.config_path.empty()) {
    std::ifstream in(inv.config_path);
    if (!in) throw ConfigError("cannot open config file '" + inv.config_path + "'");
    nlohmann::json file;
    try {
      file = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (inv.preset_name.empty()) doc = std::move(file);
    else doc.merge_patch(file);
  }
  if (inv.preset_name.empty() && inv.config_path.empty()) throw ConfigError("one of --config or --preset is required");
  if (inv.seed >= 0) doc["seed"] = static_cast<std::uint64_t>(inv.seed);
  if (inv.replicates >= 0) doc["replicates"] = inv.replicates;
  return doc;
}

std::string series_path(const std::string& out, const std::string& label) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_" + label;
  return out.substr(0, dot) + "_" + label + out.substr(dot);
}

int execute(const std::string& command, const Invocation& inv) {
  const nlohmann::json doc = load_document(inv);
  const ExperimentConfig base = parse_experiment(doc);

  struct Job {
    std::string label;
    ExperimentConfig cfg;
  };
  std::vector<Job> jobs;
  if (base.series.empty()) {
    jobs.push_back({"", base});
  } else {
    for (const Series& s : base.series) jobs.push_back({s.label, parse_experiment(apply_series(doc, s))});
  }

  bool all_passed = true;
  for (const Job& job : jobs) {
    Csv csv = [&] {
      if (command == "lt-compare") return lt_compare(job.cfg);
      if (command == "tl-sweep") return tl_sweep(job.cfg);
      if (command == "tradeoff-global") return tradeoff_global(job.cfg);
      if (command == "tradeoff-local") return tradeoff_local(job.cfg);
      if (command == "tradeoff-localglobal") return tradeoff_local_global(job.cfg);
      if (command == "density-check") return density_check(job.cfg);
      return validate(job.cfg, all_passed);
    }();
    std::ostringstream meta;
    meta << "d2dsim " << command << " config_hash=" << config_hash(job.cfg.source) << " seed=" << job.cfg.seed
         << " replicates=" << job.cfg.replicates;
    if (!job.label.empty()) meta << " series=" << job.label;
    if (inv.out.empty()) {
      csv.write(std::cout, meta.str());
    } else {
      const std::string path = job.label.empty() ? inv.out : series_path(inv.out, job.label);
      std::ofstream file(path);
      if (!file) throw std::runtime_error("cannot write '" + path + "'");
      csv.write(file, meta.str());
    }
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Simulator and evaluator for clustered D2D video-caching networks"};
  app.require_subcommand(1);
  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"lt-compare", "Simulated versus approximate Laplace transform of the interference"},
      {"tl-sweep", "Local/global metrics and average rate over the rate grid"},
      {"tradeoff-global", "max T_G subject to an average-rate floor"},
      {"tradeoff-local", "max T_L subject to average-rate and parent-density floors"},
      {"tradeoff-localglobal", "max T_G subject to a local-metric floor at a fixed rate"},
      {"density-check", "Empirical versus analytic Matern II density"},
      {"validate", "Property suite: density, match probability, rate and LT dominance, Campbell identity"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "JSON experiment file (merged over --preset when both are given)");
    sub->add_option("--preset", inv.preset_name, "Built-in experiment")
        ->check(CLI::IsMember(preset_names()));
    sub->add_option("--seed", inv.seed, "Override the experiment seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--replicates", inv.replicates, "Override the replicate count")->check(CLI::Range(2, 1 << 30));
    sub->add_option("--out", inv.out, "Output CSV path (stdout when omitted); series append _<label>");
    sub->add_option("--threads", inv.threads, "Worker threads (default: hardware concurrency)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (inv.threads > 0) set_thread_count(inv.threads);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return execute(command, inv);
  } catch (const ConfigError& e) {
    std::cerr << "d2dsim: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "d2dsim: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "d2dsim: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "d2dsim: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace d2d
