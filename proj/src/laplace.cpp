#include "d2d/laplace.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "d2d/parallel.hpp"

namespace d2d {

namespace {

constexpr double kAngularTolerance = 1e-6;
constexpr int kMinAngularIntervals = 32;   // 64 nodes on the full circle
constexpr int kMaxAngularIntervals = 512;  // 1024 nodes
constexpr double kRadialTolerance = 1e-6;

// 1 - (1 + x/k)^-k without cancellation for small x.
double saturation(double x, int k) {
  if (k == 1) return x / (1.0 + x);
  return -std::expm1(-k * std::log1p(x / k));
}

struct Integrand {
  double s, rho, alpha;
  int k;

  double operator()(double r, double cos_theta) const {
    const double q = r * r - 2.0 * r * rho * cos_theta + rho * rho;
    const double decay = alpha == 4.0 ? 1.0 / (q * q) : std::pow(q, -0.5 * alpha);
    return saturation(s * decay, k);
  }
};

// r times the angular integral over the full circle. The integrand is even
// in theta, so a trapezoid on [0, pi] with halved endpoints equals the
// full-circle trapezoid; halving the step only adds the midpoints.
double ring_integral(const Integrand& f, double r) {
  int m = kMinAngularIntervals;
  double h = std::numbers::pi / m;
  double sum = 0.5 * (f(r, 1.0) + f(r, -1.0));
  for (int j = 1; j < m; ++j) sum += f(r, std::cos(j * h));
  double estimate = 2.0 * h * sum;
  while (m < kMaxAngularIntervals) {
    double mid = 0.0;
    for (int j = 0; j < m; ++j) mid += f(r, std::cos((j + 0.5) * h));
    sum += mid;
    m *= 2;
    h *= 0.5;
    const double refined = 2.0 * h * sum;
    const bool converged = std::abs(refined - estimate) <= kAngularTolerance * std::abs(refined) ||
                           std::abs(refined) < 1e-300;
    estimate = refined;
    if (converged) return r * estimate;
  }
  throw NumericalError("shot_noise_integral: angular quadrature did not converge");
}

}  // namespace

double shot_noise_integral(double s, double rho, double alpha, int k) {
  if (!(alpha > 2.0)) throw std::invalid_argument("shot_noise_integral: alpha must exceed 2");
  if (k < 1) throw std::invalid_argument("shot_noise_integral: k must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("shot_noise_integral: rho must lie in [0, 1)");
  if (s < 0.0) throw std::invalid_argument("shot_noise_integral: s must be >= 0");
  if (s == 0.0) return 0.0;

  const Integrand f{s, rho, alpha, k};
  const double r_max = std::max(40.0, 20.0 * std::pow(s, 1.0 / alpha));
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  double error_sum = 0.0;
  // Doubling panels keep each adaptive integration on a scale-homogeneous stretch.
  for (double a = 1.0; a < r_max; a *= 2.0) {
    const double b = std::min(2.0 * a, r_max);
    double error = 0.0;
    total += Quadrature::integrate([&](double r) { return ring_integral(f, r); }, a, b, 12, 1e-10, &error);
    error_sum += error;
  }
  // Beyond r_max the integrand is s r^-alpha to first order.
  total += 2.0 * std::numbers::pi * s * std::pow(r_max, 2.0 - alpha) / (alpha - 2.0);
  if (!(std::isfinite(total)) || error_sum > kRadialTolerance * total)
    throw NumericalError("shot_noise_integral: radial quadrature did not converge");
  return total;
}

ShotNoiseTable::ShotNoiseTable(double alpha, int k)
    : alpha_(alpha),
      k_(k),
      s_nodes_(static_cast<int>(std::lround((kLogSMax - kLogSMin) / kLogSStep)) + 1),
      log_j_(static_cast<std::size_t>(s_nodes_ * kRhoNodes)) {
  parallel_for(log_j_.size(), [&](std::size_t idx) {
    const int is = static_cast<int>(idx) / kRhoNodes;
    const int ir = static_cast<int>(idx) % kRhoNodes;
    const double s = std::pow(10.0, kLogSMin + is * kLogSStep);
    const double rho = kRhoMax * ir / (kRhoNodes - 1);
    log_j_[idx] = std::log(shot_noise_integral(s, rho, alpha_, k_));
  });
}

const ShotNoiseTable& ShotNoiseTable::get(double alpha, int k) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<ShotNoiseTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[{alpha, k}];
  if (!slot) slot = std::make_unique<ShotNoiseTable>(alpha, k);
  return *slot;
}

namespace {

// Four-point Lagrange weights for nodes at offsets 0, 1, 2, 3 evaluated at u.
std::array<double, 4> cubic_weights(double u) {
  return {-(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0, u * (u - 2.0) * (u - 3.0) / 2.0,
          -u * (u - 1.0) * (u - 3.0) / 2.0, u * (u - 1.0) * (u - 2.0) / 6.0};
}

// First node of the 4-point stencil around fractional position x on [0, n-1].
int stencil_start(double x, int n) { return std::clamp(static_cast<int>(std::floor(x)) - 1, 0, n - 4); }

}  // namespace

double ShotNoiseTable::interpolate_row(double t, int ir) const {
  const int i0 = stencil_start(t, s_nodes_);
  const auto w = cubic_weights(t - i0);
  double v = 0.0;
  for (int j = 0; j < 4; ++j) v += w[static_cast<std::size_t>(j)] * at(i0 + j, ir);
  return v;
}

double ShotNoiseTable::operator()(double s, double rho) const {
  if (s <= 0.0) return 0.0;
  if (rho < 0.0 || rho > kRhoMax) return shot_noise_integral(s, rho, alpha_, k_);
  const double log_s = std::log10(s);
  // Outside the tabulated range use the small-s (linear) and large-s (s^{2/alpha}) asymptotes.
  const double clamped = std::clamp(log_s, kLogSMin, kLogSMax);
  const double t = (clamped - kLogSMin) / kLogSStep;
  const double x = rho / kRhoMax * (kRhoNodes - 1);
  const int r0 = stencil_start(x, kRhoNodes);
  const auto w = cubic_weights(x - r0);
  double log_j = 0.0;
  for (int j = 0; j < 4; ++j) log_j += w[static_cast<std::size_t>(j)] * interpolate_row(t, r0 + j);
  const double ln10 = std::numbers::ln10;
  if (log_s < kLogSMin) log_j += (log_s - kLogSMin) * ln10;
  if (log_s > kLogSMax) log_j += (2.0 / alpha_) * (log_s - kLogSMax) * ln10;
  return std::exp(log_j);
}

LaplaceApproximation::LaplaceApproximation(const NetworkConfig& cfg, const SlotCountLaw& law, int n1,
                                           bool tabulated)
    : intensity_(cfg.parent_density() * (1.0 - law.empty_probability)),
      delta_(cfg.parent.delta),
      s_per_eta_(cfg.channel.transmit_power() * cfg.channel.path_loss_constant *
                 std::pow(cfg.parent.delta, -cfg.channel.alpha)),
      alpha_(cfg.channel.alpha),
      tabulated_(tabulated) {
  if (cfg.channel.kind != ChannelKind::RayleighPowerLaw)
    throw std::invalid_argument("LaplaceApproximation: needs the Rayleigh power-law channel");
  if (n1 < 1) throw std::invalid_argument("LaplaceApproximation: n1 must be >= 1");
  law.validate();
  for (std::size_t i = 0; i < law.pmf.size(); ++i) {
    if (law.pmf[i] <= 0.0) continue;
    const int k = std::max(1, (1 << i) / n1);
    terms_.emplace_back(k, law.pmf[i]);
    if (tabulated_) tables_.push_back(&ShotNoiseTable::get(alpha_, k));
  }
}

double LaplaceApproximation::exponent(double s, double rho) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto [k, p] = terms_[i];
    sum += p * (tabulated_ ? (*tables_[i])(s, rho) : shot_noise_integral(s, rho, alpha_, k));
  }
  return intensity_ * delta_ * delta_ * sum;
}

double LaplaceApproximation::operator()(double eta, double d_norm) const {
  if (eta < 0.0) throw std::invalid_argument("LaplaceApproximation: eta must be >= 0");
  if (eta == 0.0 || intensity_ == 0.0) return 1.0;
  return std::exp(-exponent(eta * s_per_eta_, d_norm / delta_));
}

double lt_interference_approx(double eta, Point d, int n1, const NetworkConfig& cfg, const SlotCountLaw& law) {
  return LaplaceApproximation(cfg, law, n1, false)(eta, norm(d));
}

}  // namespace d2d
