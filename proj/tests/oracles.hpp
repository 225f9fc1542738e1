#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace potkit::oracle {

// Adaptive Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50) {
  const auto step = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
                        int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return step(step, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// GPD(0, sigma, gamma) log-likelihood written directly from the density,
// accumulated in long double.
inline long double loglik(std::span<const double> y, long double sigma, long double gamma) {
  if (sigma <= 0) return -std::numeric_limits<long double>::infinity();
  long double total = 0;
  for (double v : y) {
    const long double z = 1 + gamma * v / sigma;
    if (z <= 0) return -std::numeric_limits<long double>::infinity();
    if (std::fabs(gamma) < 1e-15L) total += -std::log(sigma) - v / sigma;
    else total += -std::log(sigma) - (1 / gamma + 1) * std::log(z);
  }
  return total;
}

struct GridMax {
  double sigma = 0;
  double gamma = 0;
  long double value = -std::numeric_limits<long double>::infinity();
};

// Brute-force maximizer of the two-parameter log-likelihood: a coarse sweep
// over gamma in [-0.45, 3] and log-sigma, then a fine grid with step 1e-3 in
// gamma and 1e-3 relative in sigma around the coarse winner.
inline GridMax grid_search_mle(std::span<const double> y) {
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  GridMax coarse;
  for (double g = -0.45; g <= 3.0 + 1e-9; g += 0.05) {
    for (double ls = -6.0; ls <= 6.0; ls += 0.05) {
      const double s = mean * std::exp(ls);
      const auto v = loglik(y, s, g);
      if (v > coarse.value) coarse = {s, g, v};
    }
  }
  GridMax fine = coarse;
  for (int i = -100; i <= 100; ++i) {
    const double g = coarse.gamma + 1e-3 * i;
    for (int j = -100; j <= 100; ++j) {
      const double s = coarse.sigma * std::pow(1.001, j);
      const auto v = loglik(y, s, g);
      if (v > fine.value) fine = {s, g, v};
    }
  }
  return fine;
}

// Anderson-Darling statistic by direct summation in long double.
inline long double ad_statistic(std::span<const double> z) {
  const std::size_t n = z.size();
  long double sum = 0;
  for (std::size_t i = 1; i <= n; ++i)
    sum += (2.0L * i - 1) * (std::log(static_cast<long double>(z[i - 1])) +
                             std::log(1.0L - static_cast<long double>(z[n - i])));
  return -static_cast<long double>(n) - sum / n;
}

}  // namespace potkit::oracle
