#pragma once

#include <vector>

#include "d2d/config.hpp"
#include "d2d/geometry.hpp"
#include "d2d/interference.hpp"

namespace d2d {

/// J_k(s, rho) = integral over |y| > 1 of 1 - (1 + s |y - rho e|^-alpha / k)^-k dy,
/// the dimensionless shot-noise integral behind the far-field LT. Evaluated
/// by polar quadrature: trapezoid in angle (refined until the relative change
/// is below 1e-6), adaptive Gauss-Kronrod in radius, analytic far tail.
/// Throws NumericalError when either refinement fails. Requires rho < 1.
double shot_noise_integral(double s, double rho, double alpha, int k);

/// Process-wide cached interpolation table of J_k over
/// log10 s in [-8, 10] and rho in [0, 0.5]; cubic in log J versus log s and in rho.
class ShotNoiseTable {
 public:
  static const ShotNoiseTable& get(double alpha, int k);

  ShotNoiseTable(double alpha, int k);
  double operator()(double s, double rho) const;

  static constexpr double kLogSMin = -8.0;
  static constexpr double kLogSMax = 10.0;
  static constexpr double kLogSStep = 0.1;
  static constexpr double kRhoMax = 0.5;
  static constexpr int kRhoNodes = 11;

 private:
  double at(int is, int ir) const { return log_j_[static_cast<std::size_t>(is * kRhoNodes + ir)]; }
  double interpolate_row(double t, int ir) const;

  double alpha_;
  int k_;
  int s_nodes_;
  std::vector<double> log_j_;
};

/// Far-field Poisson approximation of the Palm LT of I(d, n1):
///   exp(-lambda_p (1 - p_empty) delta^2 sum_i P(W = 2^i) J_{k_i}(eta P C~ delta^-alpha, |d| / delta)),
/// with k_i = max(1, 2^i / n1). Requires the Rayleigh power-law channel.
class LaplaceApproximation {
 public:
  LaplaceApproximation(const NetworkConfig& cfg, const SlotCountLaw& law, int n1, bool tabulated = true);

  double operator()(double eta, double d_norm) const;

 private:
  double exponent(double s, double rho) const;

  double intensity_;
  double delta_;
  double s_per_eta_;
  double alpha_;
  std::vector<std::pair<int, double>> terms_;  // (k_i, P(W = 2^i))
  std::vector<const ShotNoiseTable*> tables_;
  bool tabulated_;
};

/// Direct-quadrature evaluation of the approximation at the point d.
double lt_interference_approx(double eta, Point d, int n1, const NetworkConfig& cfg, const SlotCountLaw& law);

}  // namespace d2d
