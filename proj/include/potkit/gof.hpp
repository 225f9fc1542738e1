#pragma once

// Anderson-Darling goodness-of-fit test for a fitted GPD.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "potkit/ad_table.hpp"
#include "potkit/detail/ad_table_data.hpp"
#include "potkit/error.hpp"
#include "potkit/gpd.hpp"
#include "potkit/rng.hpp"

namespace potkit {

enum class PValueMethod { TableInterpolation, ParametricBootstrap };

constexpr std::string_view to_string(PValueMethod m) {
  return m == PValueMethod::TableInterpolation ? "table-interpolation" : "parametric-bootstrap";
}

struct AdResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  PValueMethod method = PValueMethod::TableInterpolation;
};

inline constexpr double kPitClamp = 1e-12;

// The table shipped in data/ad_critical_values.txt, compiled in.
inline const AdTable& embedded_ad_table() {
  static const AdTable table = AdTable::parse(std::string(detail::kAdTableText));
  return table;
}

inline std::vector<double> probability_integral_transform(std::span<const double> sample, const GpdParams& params) {
  std::vector<double> z;
  z.reserve(sample.size());
  for (double x : sample) z.push_back(gpd_cdf(x, params));
  std::sort(z.begin(), z.end());
  return z;
}

// A^2 = -n - (1/n) sum_i (2i - 1) [log z_(i) + log(1 - z_(n+1-i))] for
// ascending z, after clamping every z into [1e-12, 1 - 1e-12].
inline double ad_statistic(std::span<const double> z) {
  if (z.empty()) fail(ErrorKind::Domain, "AD statistic of an empty sample");
  if (!std::is_sorted(z.begin(), z.end())) fail(ErrorKind::Domain, "AD statistic needs ascending input");
  const std::size_t n = z.size();
  auto clamp = [](double v) { return std::clamp(v, kPitClamp, 1.0 - kPitClamp); };
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lower = clamp(z[i]);
    const double upper = clamp(z[n - 1 - i]);
    sum += static_cast<double>(2 * i + 1) * (std::log(lower) + std::log1p(-upper));
  }
  const double nd = static_cast<double>(n);
  return -nd - sum / nd;
}

struct BootstrapOptions {
  std::size_t replicates = 499;
  std::uint64_t seed = 0;
  FitOptions fit;
};

// Fraction of parametric-bootstrap replicates (sample, refit, A^2) whose
// statistic is at least the observed one, as (1 + count) / (1 + B). The test
// is scale-free, so replicates are drawn from GPD(0, 1, shape).
inline double bootstrap_pvalue(double statistic, double shape, std::size_t n, const BootstrapOptions& options) {
  if (options.replicates == 0) fail(ErrorKind::Validation, "bootstrap needs at least one replicate");
  if (n < 2) fail(ErrorKind::InsufficientData, "bootstrap sample size must be at least 2");
  const GpdParams null_model{0.0, 1.0, shape};
  std::size_t valid = 0;
  std::size_t exceed = 0;
  for (std::size_t b = 0; b < options.replicates; ++b) {
    Engine rng(derive_seed(options.seed, b));
    auto draw = ExceedanceSet::from_exceedances(gpd_sample(null_model, n, rng));
    try {
      FitOptions fit_options = options.fit;
      fit_options.min_exceedances = std::min(fit_options.min_exceedances, n);
      const auto fit = fit_gpd(draw, fit_options);
      const double a2 = ad_statistic(probability_integral_transform(draw.values(), fit.params));
      ++valid;
      if (a2 >= statistic) ++exceed;
    } catch (const Error&) {
      // replicate without an MLE: excluded from the reference distribution
    }
  }
  if (valid == 0) fail(ErrorKind::NonConvergence, "no bootstrap replicate could be fitted");
  return static_cast<double>(exceed + 1) / static_cast<double>(valid + 1);
}

inline double ad_pvalue(double statistic, double shape, std::size_t n, PValueMethod method,
                        const BootstrapOptions& bootstrap = {}, const AdTable& table = embedded_ad_table()) {
  if (!std::isfinite(statistic)) fail(ErrorKind::Domain, "AD statistic must be finite");
  if (method == PValueMethod::TableInterpolation) return table.pvalue(statistic, shape);
  return bootstrap_pvalue(statistic, shape, n, bootstrap);
}

struct GofOptions {
  PValueMethod method = PValueMethod::TableInterpolation;
  // Table mode only: fall back to the bootstrap when the fitted shape is off-table.
  bool bootstrap_fallback = true;
  BootstrapOptions bootstrap;
  FitOptions fit;
};

struct GofOutcome {
  GpdFit fit;
  AdResult ad;
  bool used_fallback = false;
};

// Fit, transform and test the exceedances of `sample` over `threshold`.
inline GofOutcome gof_test_detailed(std::span<const double> sample, double threshold, const GofOptions& options = {}) {
  const auto exceedances = ExceedanceSet::above(sample, threshold);
  GofOutcome out;
  out.fit = fit_gpd(exceedances, options.fit);
  const GpdParams shifted{0.0, out.fit.params.sigma, out.fit.params.gamma};
  out.ad.statistic = ad_statistic(probability_integral_transform(exceedances.values(), shifted));
  out.ad.n = exceedances.count();
  out.ad.method = options.method;
  const double shape = out.fit.params.gamma;
  if (options.method == PValueMethod::TableInterpolation && !embedded_ad_table().covers(shape) && options.bootstrap_fallback) {
    out.ad.method = PValueMethod::ParametricBootstrap;
    out.used_fallback = true;
  }
  BootstrapOptions boot = options.bootstrap;
  boot.fit = options.fit;
  out.ad.p_value = ad_pvalue(out.ad.statistic, shape, out.ad.n, out.ad.method, boot);
  return out;
}

inline AdResult gof_test(std::span<const double> sample, double threshold, const GofOptions& options = {}) {
  return gof_test_detailed(sample, threshold, options).ad;
}

}  // namespace potkit
