#pragma once

// Null-distribution table of the Anderson-Darling statistic for a GPD whose
// scale and shape are both estimated by maximum likelihood.
//
// Text format (version 1), '#' starts a comment:
//
//   potkit-ad-table 1
//   levels <p_1> ... <p_m>          upper-tail probabilities, descending
//   shape <g> <a_1> ... <a_m>       critical values, ascending, one row per shape
//
// Rows appear in ascending shape order.

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "potkit/error.hpp"

namespace potkit {

class AdTable {
 public:
  AdTable() = default;
  AdTable(std::vector<double> levels, std::vector<double> shapes, std::vector<std::vector<double>> critical)
      : levels_(std::move(levels)), shapes_(std::move(shapes)), critical_(std::move(critical)) {
    check();
  }

  static AdTable parse(std::istream& in) {
    std::vector<double> levels;
    std::vector<double> shapes;
    std::vector<std::vector<double>> critical;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string key;
      if (!(fields >> key)) continue;
      if (key == "potkit-ad-table") {
        int version = 0;
        fields >> version;
        if (version != 1) fail(ErrorKind::SchemaMismatch, "unsupported AD table version");
        saw_header = true;
      } else if (key == "levels") {
        for (double v; fields >> v;) levels.push_back(v);
      } else if (key == "shape") {
        double shape = 0.0;
        if (!(fields >> shape)) fail(ErrorKind::SchemaMismatch, "AD table row without a shape value");
        std::vector<double> row;
        for (double v; fields >> v;) row.push_back(v);
        shapes.push_back(shape);
        critical.push_back(std::move(row));
      } else {
        fail(ErrorKind::SchemaMismatch, "unknown AD table record '" + key + "'");
      }
    }
    if (!saw_header) fail(ErrorKind::SchemaMismatch, "missing AD table header");
    return AdTable(std::move(levels), std::move(shapes), std::move(critical));
  }

  static AdTable parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  [[nodiscard]] const std::vector<double>& levels() const { return levels_; }
  [[nodiscard]] const std::vector<double>& shapes() const { return shapes_; }
  [[nodiscard]] const std::vector<std::vector<double>>& critical_values() const { return critical_; }
  [[nodiscard]] double p_max() const { return levels_.front(); }
  [[nodiscard]] double p_min() const { return levels_.back(); }

  [[nodiscard]] bool covers(double shape) const {
    return !shapes_.empty() && shape >= shapes_.front() - 1e-12 && shape <= shapes_.back() + 1e-12;
  }

  // Upper-tail probability of `statistic`, interpolated linearly in log A^2
  // within each shape row and linearly across the two neighbouring shapes.
  [[nodiscard]] double pvalue(double statistic, double shape) const {
    if (!covers(shape))
      fail(ErrorKind::UnsupportedShape, "shape " + std::to_string(shape) + " outside the AD table range");
    if (std::isnan(statistic)) fail(ErrorKind::Domain, "AD statistic is NaN");
    const auto upper = std::upper_bound(shapes_.begin(), shapes_.end(), shape);
    std::size_t hi = static_cast<std::size_t>(upper - shapes_.begin());
    hi = std::clamp<std::size_t>(hi, 1, shapes_.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = std::clamp((shape - shapes_[lo]) / (shapes_[hi] - shapes_[lo]), 0.0, 1.0);
    const double p = std::lerp(row_pvalue(lo, statistic), row_pvalue(hi, statistic), w);
    return std::clamp(p, p_min(), p_max());
  }

 private:
  void check() const {
    if (levels_.size() < 2 || shapes_.size() < 2) fail(ErrorKind::SchemaMismatch, "AD table needs at least 2 levels and 2 shapes");
    if (!std::is_sorted(levels_.rbegin(), levels_.rend())) fail(ErrorKind::SchemaMismatch, "AD table levels must descend");
    if (!std::is_sorted(shapes_.begin(), shapes_.end())) fail(ErrorKind::SchemaMismatch, "AD table shapes must ascend");
    for (const auto& row : critical_) {
      if (row.size() != levels_.size()) fail(ErrorKind::SchemaMismatch, "AD table row width differs from the level count");
      if (!std::is_sorted(row.begin(), row.end()) || row.front() <= 0.0)
        fail(ErrorKind::SchemaMismatch, "AD table critical values must be positive and ascending");
    }
  }

  [[nodiscard]] double row_pvalue(std::size_t row, double statistic) const {
    const auto& crit = critical_[row];
    if (statistic <= crit.front()) return levels_.front();
    if (statistic >= crit.back()) return levels_.back();
    const auto it = std::upper_bound(crit.begin(), crit.end(), statistic);
    const std::size_t j = static_cast<std::size_t>(it - crit.begin());
    const double t = (std::log(statistic) - std::log(crit[j - 1])) / (std::log(crit[j]) - std::log(crit[j - 1]));
    return levels_[j - 1] + t * (levels_[j] - levels_[j - 1]);
  }

  std::vector<double> levels_;
  std::vector<double> shapes_;
  std::vector<std::vector<double>> critical_;
};

}  // namespace potkit
