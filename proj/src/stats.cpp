#include "d2d/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace d2d {

std::string_view to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::ClosedForm: return "closed_form";
    case EstimateMethod::LtRayleigh: return "lt_rayleigh";
    case EstimateMethod::FullMonteCarlo: return "full_monte_carlo";
  }
  return "unknown";
}

double Accumulator::variance() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double Accumulator::std_error() const {
  if (count < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count));
}

namespace {

// Batch b covers [start(b), start(b+1)); sizes differ by at most one.
std::size_t batch_start(std::size_t b, std::size_t n, std::size_t batches) {
  return b * n / batches;
}

}  // namespace

MetricEstimate batch_means(std::span<const double> samples, EstimateMethod method,
                           std::size_t batches) {
  MetricEstimate est;
  est.method = method;
  est.replicates = samples.size();
  if (samples.empty()) return est;
  batches = std::clamp<std::size_t>(batches, 1, samples.size());
  Accumulator total;
  Accumulator batch_stats;
  for (std::size_t b = 0; b < batches; ++b) {
    Accumulator acc;
    for (std::size_t i = batch_start(b, samples.size(), batches);
         i < batch_start(b + 1, samples.size(), batches); ++i)
      acc.add(samples[i]);
    total.merge(acc);
    batch_stats.add(acc.mean());
  }
  est.value = total.mean();
  est.std_error = batch_stats.std_error();
  return est;
}

MetricEstimate batch_ratio(std::span<const double> numerators, std::span<const double> denominators,
                           EstimateMethod method, std::size_t batches) {
  if (numerators.size() != denominators.size())
    throw std::invalid_argument("batch_ratio: size mismatch");
  MetricEstimate est;
  est.method = method;
  est.replicates = numerators.size();
  if (numerators.empty()) return est;
  batches = std::clamp<std::size_t>(batches, 1, numerators.size());
  double num_total = 0.0;
  double den_total = 0.0;
  std::vector<std::pair<double, double>> per_batch(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = batch_start(b, numerators.size(), batches);
         i < batch_start(b + 1, numerators.size(), batches); ++i) {
      num += numerators[i];
      den += denominators[i];
    }
    per_batch[b] = {num, den};
    num_total += num;
    den_total += den;
  }
  if (den_total <= 0.0) return est;
  est.value = num_total / den_total;
  // Linearized ratio: residuals num_b - value * den_b scaled by the mean denominator.
  Accumulator residuals;
  const double mean_den = den_total / static_cast<double>(batches);
  for (const auto& [num, den] : per_batch) residuals.add((num - est.value * den) / mean_den);
  est.std_error = residuals.std_error();
  return est;
}

}  // namespace d2d
