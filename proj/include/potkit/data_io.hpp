#pragma once

// Claims ingestion (CSV), per-year filtering, summary statistics and the
// empirical CDF.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "potkit/error.hpp"
#include "potkit/quantile.hpp"

namespace potkit {

struct Claim {
  int year = 0;
  double size = 0.0;  // scaled units (raw / scale_factor)

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct ClaimsDataset {
  std::vector<Claim> claims;
  double scale_factor = 1e6;
  std::string source_path;
  std::optional<double> truncation_floor;
  std::size_t malformed_rows = 0;
  std::size_t below_floor_rows = 0;

  [[nodiscard]] std::vector<int> years() const {
    std::vector<int> out;
    for (const auto& c : claims) out.push_back(c.year);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct ColumnSchema {
  std::string year_column = "year";
  std::string claim_column = "claim";
  char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

}  // namespace detail

struct LoadOptions {
  ColumnSchema schema;
  double scale_factor = 1e6;
  std::optional<double> truncation_floor;  // scaled units; rows below it are dropped and counted
};

inline ClaimsDataset load_claims(const std::string& path, const LoadOptions& options = {}) {
  if (!(options.scale_factor > 0.0)) fail(ErrorKind::Validation, "scale factor must be positive");
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileUnreadable, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::SchemaMismatch, "'" + path + "' has no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = detail::split(line, options.schema.delimiter);
  const auto find_column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(ErrorKind::SchemaMismatch, "'" + path + "' has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t year_col = find_column(options.schema.year_column);
  const std::size_t claim_col = find_column(options.schema.claim_column);

  ClaimsDataset data;
  data.scale_factor = options.scale_factor;
  data.source_path = path;
  data.truncation_floor = options.truncation_floor;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, options.schema.delimiter);
    if (fields.size() != header.size()) {
      ++data.malformed_rows;
      continue;
    }
    const auto year = detail::parse_number<int>(fields[year_col]);
    const auto raw = detail::parse_number<double>(fields[claim_col]);
    if (!year || !raw || !(*raw > 0.0)) {
      ++data.malformed_rows;
      continue;
    }
    const double size = *raw / options.scale_factor;
    if (options.truncation_floor && size < *options.truncation_floor - 1e-9) {
      ++data.below_floor_rows;
      continue;
    }
    data.claims.push_back({*year, size});
  }
  if (data.claims.empty()) fail(ErrorKind::EmptyAfterParse, "'" + path + "' contains no usable claims");
  return data;
}

// Writes raw currency units (size * scale_factor) with round-trip precision.
inline void write_claims(const std::string& path, const ClaimsDataset& data, const ColumnSchema& schema = {}) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::FileUnreadable, "cannot write '" + path + "'");
  out << schema.year_column << schema.delimiter << schema.claim_column << '\n';
  out << std::setprecision(17);
  for (const auto& c : data.claims) {
    // pick a neighbour of size * scale that divides back to exactly size
    double raw = c.size * data.scale_factor;
    for (double probe : {raw, std::nextafter(raw, 0.0), std::nextafter(raw, HUGE_VAL)})
      if (probe / data.scale_factor == c.size) {
        raw = probe;
        break;
      }
    out << c.year << schema.delimiter << raw << '\n';
  }
}

inline std::vector<double> filter_year(const ClaimsDataset& data, int year) {
  std::vector<double> out;
  for (const auto& c : data.claims)
    if (c.year == year) out.push_back(c.size);
  if (out.empty()) fail(ErrorKind::YearAbsent, "no claims for year " + std::to_string(year));
  std::sort(out.begin(), out.end());
  return out;
}

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

inline SummaryStats summary_stats(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::InsufficientData, "summary of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.n = sorted.size();
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  double correction = 0.0;
  for (double v : sorted) {
    ss += (v - s.mean) * (v - s.mean);
    correction += v - s.mean;
  }
  s.sd = s.n > 1 ? std::sqrt((ss - correction * correction / n) / (n - 1.0)) : 0.0;
  s.q1 = quantile_sorted(sorted, 0.25);
  s.q2 = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.max = sorted.back();
  return s;
}

// Right-continuous empirical CDF: F(x) = #{x_i <= x} / n.
class Ecdf {
 public:
  explicit Ecdf(std::span<const double> values) : sorted_(values.begin(), values.end()) {
    if (sorted_.empty()) fail(ErrorKind::InsufficientData, "empirical CDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
  }

  [[nodiscard]] double operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
  }

  // Distinct support points with their cumulative fractions.
  [[nodiscard]] std::vector<std::pair<double, double>> steps() const {
    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(sorted_.size());
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
      if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i]) continue;
      out.emplace_back(sorted_[i], static_cast<double>(i + 1) / n);
    }
    return out;
  }

  [[nodiscard]] std::span<const double> support() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

}  // namespace potkit
