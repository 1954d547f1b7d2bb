#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace d2d {

enum class EstimateMethod { ClosedForm, LtRayleigh, FullMonteCarlo };

std::string_view to_string(EstimateMethod method);

/// A Monte Carlo (or exact) estimate with its standard error.
struct MetricEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  EstimateMethod method = EstimateMethod::ClosedForm;
};

/// Streaming count / sum / sum-of-squares. merge() is associative.
struct Accumulator {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Accumulator& other) {
    count += other.count;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double variance() const;
  double std_error() const;
};

inline constexpr std::size_t kDefaultBatches = 32;

/// Batch-means estimate of E[x] over samples taken in replicate order.
MetricEstimate batch_means(std::span<const double> samples, EstimateMethod method,
                           std::size_t batches = kDefaultBatches);

/// Batch-means estimate of the ratio E[num] / E[den]; the value is the pooled
/// ratio and the error comes from the spread of per-batch ratios.
MetricEstimate batch_ratio(std::span<const double> numerators, std::span<const double> denominators,
                           EstimateMethod method, std::size_t batches = kDefaultBatches);

}  // namespace d2d
