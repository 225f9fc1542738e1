#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "potkit/error.hpp"

namespace potkit {

// Linear-interpolation order-statistic quantile: h = (n-1)p + 1,
// q = x_(floor h) + (h - floor h)(x_(floor h + 1) - x_(floor h)).
// This is the single quantile rule used by summaries, empirical VaR and the
// candidate grid. `sorted` must be ascending.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) fail(ErrorKind::InsufficientData, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::Domain, "quantile level must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;  // zero-based
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::span<const double> values, double p) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, p);
}

}  // namespace potkit
