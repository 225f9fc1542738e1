#pragma once

// Generalized Pareto distribution: distribution functions, sampling and the
// maximum-likelihood fit of (sigma, gamma) for a known threshold through the
// one-dimensional profile in theta = gamma / sigma.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "potkit/error.hpp"
#include "potkit/rng.hpp"

namespace potkit {

// Below this |gamma| the exponential branch of the CDF / quantile is used.
inline constexpr double kExponentialShapeTolerance = 1e-12;

struct GpdParams {
  double mu = 0.0;     // location (threshold), data units
  double sigma = 1.0;  // scale, data units
  double gamma = 0.0;  // shape

  void validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorKind::Domain, "GPD scale must be positive");
    if (!std::isfinite(mu) || !std::isfinite(gamma)) fail(ErrorKind::Domain, "GPD parameters must be finite");
  }

  // Right end of the support; +inf unless gamma < 0.
  [[nodiscard]] double upper_endpoint() const {
    return gamma < 0.0 ? mu - sigma / gamma : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const GpdParams&, const GpdParams&) = default;
};

// Nonnegative exceedances y_i = x_i - threshold, kept ascending.
class ExceedanceSet {
 public:
  ExceedanceSet() = default;

  // Keeps x >= threshold and shifts by the threshold.
  static ExceedanceSet above(std::span<const double> data, double threshold) {
    ExceedanceSet set;
    set.threshold_ = threshold;
    for (double x : data)
      if (x >= threshold) set.values_.push_back(x - threshold);
    std::sort(set.values_.begin(), set.values_.end());
    return set;
  }

  // Wraps already-shifted values; they are sorted and must be nonnegative.
  static ExceedanceSet from_exceedances(std::vector<double> values, double threshold = 0.0) {
    for (double y : values)
      if (!(y >= 0.0) || !std::isfinite(y)) fail(ErrorKind::Domain, "exceedances must be finite and nonnegative");
    std::sort(values.begin(), values.end());
    ExceedanceSet set;
    set.values_ = std::move(values);
    set.threshold_ = threshold;
    return set;
  }

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double threshold() const { return threshold_; }
  [[nodiscard]] std::size_t count() const { return values_.size(); }
  [[nodiscard]] bool empty() const { return values_.empty(); }
  [[nodiscard]] double max() const { return values_.empty() ? 0.0 : values_.back(); }

 private:
  std::vector<double> values_;
  double threshold_ = 0.0;
};

struct GpdFit {
  GpdParams params;
  double theta_hat = 0.0;  // gamma / sigma at the optimum; 0 for the exponential limit
  double log_likelihood = 0.0;
  std::size_t n_exceedances = 0;
  bool converged = false;
  bool mle_regularity_ok = false;  // gamma_hat > -1/2
};

// ---------------------------------------------------------------------------
// Distribution functions

inline double gpd_cdf(double x, const GpdParams& p) {
  p.validate();
  if (std::isnan(x)) fail(ErrorKind::Domain, "GPD cdf of NaN");
  if (x < p.mu) fail(ErrorKind::Domain, "GPD cdf evaluated below the location parameter");
  if (x >= p.upper_endpoint()) return 1.0;
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.gamma) < kExponentialShapeTolerance) return -std::expm1(-z);
  return -std::expm1(-std::log1p(p.gamma * z) / p.gamma);
}

inline double gpd_quantile(double prob, const GpdParams& p) {
  p.validate();
  if (!(prob >= 0.0 && prob < 1.0)) fail(ErrorKind::Domain, "GPD quantile level must lie in [0, 1)");
  const double log_tail = std::log1p(-prob);  // log(1 - p)
  if (std::abs(p.gamma) < kExponentialShapeTolerance) return p.mu - p.sigma * log_tail;
  return p.mu + p.sigma * std::expm1(-p.gamma * log_tail) / p.gamma;
}

inline double gpd_pdf(double x, const GpdParams& p) {
  p.validate();
  if (std::isnan(x) || x < p.mu || x > p.upper_endpoint())
    fail(ErrorKind::Domain, "GPD density evaluated outside the support");
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.gamma) < kExponentialShapeTolerance) return std::exp(-z) / p.sigma;
  if (p.gamma < 0.0 && x == p.upper_endpoint()) return p.gamma < -1.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::exp(-(1.0 / p.gamma + 1.0) * std::log1p(p.gamma * z)) / p.sigma;
}

// Inverse-transform sampling with a caller-owned engine.
inline std::vector<double> gpd_sample(const GpdParams& p, std::size_t count, Engine& rng) {
  p.validate();
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gpd_quantile(uniform(rng), p));
  return out;
}

inline std::vector<double> gpd_sample(const GpdParams& p, std::size_t count, std::uint64_t seed) {
  Engine rng(seed);
  return gpd_sample(p, count, rng);
}

// ---------------------------------------------------------------------------
// Likelihoods

// Full log-likelihood of exceedances y under GPD(0, sigma, gamma); -inf outside
// the support.
inline double gpd_loglik(std::span<const double> y, double sigma, double gamma) {
  if (!(sigma > 0.0)) return -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(y.size());
  if (std::abs(gamma) < kExponentialShapeTolerance) {
    double sum = 0.0;
    for (double v : y) sum += v;
    return -n * std::log(sigma) - sum / sigma;
  }
  double sum = 0.0;
  for (double v : y) {
    const double t = gamma * v / sigma;
    if (!(t > -1.0)) return -std::numeric_limits<double>::infinity();
    sum += std::log1p(t);
  }
  return -n * std::log(sigma) - (1.0 + 1.0 / gamma) * sum;
}

namespace detail {

struct ProfileTerms {
  double log_sum = 0.0;   // sum log(1 + theta y)
  double scale = 0.0;     // gamma_hat(theta) / theta, i.e. the implied sigma
};

inline ProfileTerms profile_terms(double theta, std::span<const double> y) {
  ProfileTerms terms;
  const double n = static_cast<double>(y.size());
  if (theta == 0.0) {
    terms.scale = std::accumulate(y.begin(), y.end(), 0.0) / n;
    return terms;
  }
  for (double v : y) terms.log_sum += std::log1p(theta * v);
  terms.scale = terms.log_sum / n / theta;
  return terms;
}

}  // namespace detail

// Profile log-likelihood in theta:
//   l(theta) = -n - sum log(1 + theta y_i) - n log(gamma_hat(theta) / theta),
// gamma_hat(theta) = mean log(1 + theta y_i). This equals the full
// log-likelihood at sigma = gamma_hat / theta, gamma = gamma_hat, for either
// sign of theta; theta = 0 is the exponential limit -n - n log(mean y).
inline double profile_loglik(double theta, const ExceedanceSet& exceedances) {
  const auto y = exceedances.values();
  if (y.empty()) fail(ErrorKind::InsufficientData, "profile likelihood of an empty sample");
  if (!(1.0 + theta * exceedances.max() > 0.0))
    fail(ErrorKind::Domain, "profile likelihood outside 1 + theta * y > 0");
  const double n = static_cast<double>(y.size());
  const auto terms = detail::profile_terms(theta, y);
  if (!(terms.scale > 0.0)) fail(ErrorKind::Domain, "profile likelihood needs a positive implied scale");
  return -n - terms.log_sum - n * std::log(terms.scale);
}

// ---------------------------------------------------------------------------
// Fitting

struct FitOptions {
  std::size_t min_exceedances = 10;
  // Coarse bracketing grid: this many points on the negative side of
  // theta = 0 and twice as many on the positive side.
  std::size_t grid_points = 64;
  double relative_tolerance = 1e-10;
};

namespace detail {

// d l / d theta = n [1/theta - A (1 + 1/gamma_hat)], A = mean y / (1 + theta y).
inline double profile_score(double theta, std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  double log_sum = 0.0;
  double ratio_sum = 0.0;
  for (double v : y) {
    log_sum += std::log1p(theta * v);
    ratio_sum += v / (1.0 + theta * v);
  }
  const double gamma_hat = log_sum / n;
  const double a = ratio_sum / n;
  return n * (1.0 / theta - a * (1.0 + 1.0 / gamma_hat));
}

// Scale-free theta grid, in units of 1 / y_max: the negative side runs from
// -(1 - 1e-8) to -1e-8 (dense near both ends), then 0, then 1e-8 .. 1e20
// with twice the points. theta * y_max grows like n^gamma for heavy tails.
inline std::vector<double> theta_grid(double y_max, std::size_t per_side) {
  const std::size_t half = std::max<std::size_t>(per_side / 2, 2);
  auto logspace = [](double lo, double hi, std::size_t k, std::size_t count) {
    return std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
  };
  std::vector<double> u;
  u.reserve(3 * per_side + 1);
  // close to the support boundary u = -1
  for (std::size_t k = 0; k < half; ++k) u.push_back(-(1.0 - logspace(-8.0, std::log10(0.5), k, half)));
  // close to zero from below, excluding the shared point -0.5
  for (std::size_t k = half - 1; k-- > 0;) u.push_back(-logspace(-8.0, std::log10(0.5), k, half));
  u.push_back(0.0);
  for (std::size_t k = 0; k < 2 * per_side; ++k) u.push_back(logspace(-8.0, 20.0, k, 2 * per_side));
  for (double& v : u) v /= y_max;
  return u;
}

}  // namespace detail

// Maximum-likelihood fit of GPD(threshold, sigma, gamma) to the exceedances.
// The profile likelihood is scanned on a bracketing grid; the best interior
// local maximum is refined by bisection on the score (or golden section when
// the bracket straddles theta = 0). The exponential fit is kept whenever it
// scores higher.
inline GpdFit fit_gpd(const ExceedanceSet& exceedances, const FitOptions& options = {}) {
  const auto y = exceedances.values();
  const std::size_t n = y.size();
  if (n < std::max<std::size_t>(options.min_exceedances, 2))
    fail(ErrorKind::InsufficientData, "need at least " + std::to_string(std::max<std::size_t>(options.min_exceedances, 2)) +
                                          " exceedances, got " + std::to_string(n));
  const double y_max = exceedances.max();
  if (!(y_max > 0.0)) fail(ErrorKind::NonConvergence, "all exceedances are zero");

  const auto grid = detail::theta_grid(y_max, options.grid_points);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = profile_loglik(grid[i], exceedances);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] >= values[i - 1] && values[i] >= values[i + 1] && values[i] > best_value) {
      best = i;
      best_value = values[i];
    }
  }
  if (best == 0)
    fail(ErrorKind::NonConvergence, "profile likelihood has no interior maximum (MLE does not exist)");

  double lo = grid[best - 1];
  double hi = grid[best + 1];
  double theta = grid[best];
  bool converged = false;
  auto close_enough = [&](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-8 / y_max});
    return b - a <= options.relative_tolerance * scale;
  };

  if (lo > 0.0 || hi < 0.0) {
    const double s_lo = detail::profile_score(lo, y);
    const double s_hi = detail::profile_score(hi, y);
    if (s_lo > 0.0 && s_hi < 0.0) {
      for (int iter = 0; iter < 200 && !close_enough(lo, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (detail::profile_score(mid, y) > 0.0) lo = mid;
        else hi = mid;
      }
      theta = 0.5 * (lo + hi);
      converged = close_enough(lo, hi);
    }
  }
  if (!converged) {
    lo = grid[best - 1];
    hi = grid[best + 1];
    constexpr double inv_phi = 0.6180339887498949;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = profile_loglik(a, exceedances);
    double fb = profile_loglik(b, exceedances);
    for (int iter = 0; iter < 300 && !close_enough(lo, hi); ++iter) {
      if (fa < fb) {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = profile_loglik(b, exceedances);
      } else {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = profile_loglik(a, exceedances);
      }
    }
    converged = close_enough(lo, hi);
    theta = fa >= fb ? a : b;
    if (values[best] > std::max(fa, fb)) theta = grid[best];
  }

  // Exponential limit candidate.
  if (profile_loglik(0.0, exceedances) > profile_loglik(theta, exceedances)) theta = 0.0;

  GpdFit fit;
  fit.n_exceedances = n;
  fit.converged = converged || theta == 0.0;
  fit.theta_hat = theta;
  const auto terms = detail::profile_terms(theta, y);
  fit.params.mu = exceedances.threshold();
  fit.params.gamma = theta == 0.0 ? 0.0 : terms.log_sum / static_cast<double>(n);
  fit.params.sigma = terms.scale;
  fit.log_likelihood = gpd_loglik(y, fit.params.sigma, fit.params.gamma);
  fit.mle_regularity_ok = fit.params.gamma > -0.5;
  return fit;
}

}  // namespace potkit
