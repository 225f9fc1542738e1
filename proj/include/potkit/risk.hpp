#pragma once

// Value-at-Risk from a fitted GPD with delta-method confidence intervals.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "potkit/error.hpp"
#include "potkit/gpd.hpp"
#include "potkit/normal.hpp"
#include "potkit/quantile.hpp"

namespace potkit {

// Asymptotic covariance of (sigma_hat, gamma_hat).
struct MleCovariance {
  std::array<std::array<double, 2>, 2> matrix{};
  std::size_t n = 0;
};

struct VarEstimate {
  double level = 0.0;
  double var = 0.0;
  double omega = 0.0;  // asymptotic standard error
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double ci_level = 0.95;
  std::size_t n = 0;

  [[nodiscard]] bool covers(double value) const { return value >= ci_lower && value <= ci_upper; }
};

// Inverse Fisher information for (sigma, gamma):
//   n^-1 [[2 sigma^2 (1 + gamma), -sigma (1 + gamma)], [-sigma (1 + gamma), (1 + gamma)^2]]
inline MleCovariance mle_covariance(const GpdParams& params, std::size_t n) {
  if (!(params.gamma > -0.5)) fail(ErrorKind::RegularityViolation, "asymptotic normality needs gamma > -1/2");
  if (n == 0) fail(ErrorKind::InsufficientData, "covariance needs n >= 1");
  params.validate();
  const double s = params.sigma;
  const double g1 = 1.0 + params.gamma;
  const double inv_n = 1.0 / static_cast<double>(n);
  MleCovariance cov;
  cov.n = n;
  cov.matrix = {{{2.0 * s * s * g1 * inv_n, -s * g1 * inv_n}, {-s * g1 * inv_n, g1 * g1 * inv_n}}};
  return cov;
}

inline MleCovariance mle_covariance(const GpdFit& fit) {
  if (!fit.mle_regularity_ok) fail(ErrorKind::RegularityViolation, "fit has gamma_hat <= -1/2");
  return mle_covariance(fit.params, fit.n_exceedances);
}

namespace detail {

// (t e^t - e^t + 1) / t^2, stable near t = 0.
inline double var_shape_kernel(double t) {
  if (std::abs(t) < 0.1) {
    // sum_{k>=2} (k - 1) t^(k-2) / k!
    double sum = 0.0;
    double inv_factorial = 0.5;
    double power = 1.0;
    for (int k = 2; k < 20; ++k) {
      sum += static_cast<double>(k - 1) * power * inv_factorial;
      power *= t;
      inv_factorial /= static_cast<double>(k + 1);
    }
    return sum;
  }
  return (t * std::exp(t) - std::expm1(t)) / (t * t);
}

}  // namespace detail

// Gradient of VaR_p = mu + (sigma / gamma) [(1 - p)^-gamma - 1] in (sigma, gamma):
//   d/dsigma = [(1 - p)^-gamma - 1] / gamma
//   d/dgamma = sigma [(1 - p)^-gamma (-log(1 - p)) gamma - ((1 - p)^-gamma - 1)] / gamma^2
// Written in t = -gamma log(1 - p) so that gamma -> 0 is continuous
// (limits -log(1 - p) and sigma log^2(1 - p) / 2).
inline std::array<double, 2> var_gradient(const GpdParams& params, double level) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorKind::Domain, "VaR level must lie in (0, 1)");
  params.validate();
  const double log_tail = std::log1p(-level);
  const double t = -params.gamma * log_tail;
  const double d_sigma = t == 0.0 ? -log_tail : -log_tail * std::expm1(t) / t;
  const double d_gamma = params.sigma * log_tail * log_tail * detail::var_shape_kernel(t);
  return {d_sigma, d_gamma};
}

struct VarOptions {
  // When set, `level` refers to the unconditional distribution of the data and
  // is mapped to the exceedance level 1 - (1 - level) / fraction.
  std::optional<double> exceedance_fraction;
};

inline double exceedance_level(double level, const VarOptions& options) {
  if (!options.exceedance_fraction) return level;
  const double zeta = *options.exceedance_fraction;
  if (!(zeta > 0.0 && zeta <= 1.0)) fail(ErrorKind::Validation, "exceedance fraction must lie in (0, 1]");
  const double adjusted = 1.0 - (1.0 - level) / zeta;
  if (!(adjusted > 0.0)) fail(ErrorKind::Domain, "VaR level falls below the threshold for this exceedance fraction");
  return adjusted;
}

inline VarEstimate var_with_ci(const GpdFit& fit, double level, double ci_level = 0.95, const VarOptions& options = {}) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorKind::Validation, "VaR level must lie in (0, 1)");
  if (!(ci_level > 0.0 && ci_level < 1.0)) fail(ErrorKind::Validation, "CI level must lie in (0, 1)");
  const double p = exceedance_level(level, options);
  const auto cov = mle_covariance(fit);
  const auto grad = var_gradient(fit.params, p);
  const auto& m = cov.matrix;
  const double omega2 = grad[0] * grad[0] * m[0][0] + 2.0 * grad[0] * grad[1] * m[0][1] + grad[1] * grad[1] * m[1][1];
  if (omega2 < -1e-9) fail(ErrorKind::NonPositiveVariance, "negative delta-method variance");

  VarEstimate est;
  est.level = level;
  est.ci_level = ci_level;
  est.n = fit.n_exceedances;
  est.var = gpd_quantile(p, fit.params);
  est.omega = std::sqrt(std::max(omega2, 0.0));
  const double z = normal::quantile(1.0 - (1.0 - ci_level) / 2.0);
  est.ci_lower = est.var - z * est.omega;
  est.ci_upper = est.var + z * est.omega;
  return est;
}

inline double empirical_var(std::span<const double> data, double level) {
  if (data.empty()) fail(ErrorKind::InsufficientData, "empirical VaR of an empty sample");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorKind::Validation, "VaR level must lie in (0, 1)");
  return quantile(data, level);
}

}  // namespace potkit
