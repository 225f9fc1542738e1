#pragma once

// Accumulation tests over ordered goodness-of-fit p-values and the automated
// threshold selection pipeline built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "potkit/error.hpp"
#include "potkit/gof.hpp"
#include "potkit/gpd.hpp"
#include "potkit/quantile.hpp"
#include "potkit/rng.hpp"

namespace potkit {

enum class AccumulationKind { ForwardStop, SeqStep, HingeExp };

constexpr std::string_view to_string(AccumulationKind k) {
  switch (k) {
    case AccumulationKind::ForwardStop: return "ForwardStop";
    case AccumulationKind::SeqStep: return "SeqStep";
    case AccumulationKind::HingeExp: return "HingeExp";
  }
  return "?";
}

inline AccumulationKind parse_accumulation_kind(std::string_view name) {
  if (name == "ForwardStop" || name == "forwardstop" || name == "forward-stop") return AccumulationKind::ForwardStop;
  if (name == "SeqStep" || name == "seqstep" || name == "seq-step") return AccumulationKind::SeqStep;
  if (name == "HingeExp" || name == "hingeexp" || name == "hinge-exp") return AccumulationKind::HingeExp;
  fail(ErrorKind::Validation, "unknown accumulation test '" + std::string(name) + "'");
}

struct AccumulationSpec {
  AccumulationKind kind = AccumulationKind::ForwardStop;
  double c_param = 2.0;  // SeqStep / HingeExp only
  double alpha = 0.05;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Validation, "alpha must lie in (0, 1)");
    if (kind != AccumulationKind::ForwardStop && !(c_param > 1.0))
      fail(ErrorKind::Validation, "C must exceed 1 for SeqStep and HingeExp");
  }
};

// h(p):
//   ForwardStop  -log(1 - p)
//   SeqStep      C * 1{p > 1 - 1/C}
//   HingeExp     C * log(1 / (C (1 - p))) * 1{p > 1 - 1/C}
inline double accumulation_value(double p, const AccumulationSpec& spec) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::Domain, "p-value must lie in [0, 1]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (spec.kind) {
    case AccumulationKind::ForwardStop:
      return p == 1.0 ? inf : -std::log1p(-p);
    case AccumulationKind::SeqStep:
      return p > 1.0 - 1.0 / spec.c_param ? spec.c_param : 0.0;
    case AccumulationKind::HingeExp:
      if (!(p > 1.0 - 1.0 / spec.c_param)) return 0.0;
      if (p == 1.0) return inf;
      return spec.c_param * -std::log(spec.c_param * (1.0 - p));
  }
  return 0.0;
}

struct CutoffResult {
  std::size_t k_hat = 0;
  std::vector<double> running_averages;  // entry k-1 holds (1/k) sum_{i<=k} h(p_i)
};

// k_hat is the largest k whose running average is at most alpha, or 0.
inline CutoffResult accumulation_cutoff(std::span<const double> p_values, const AccumulationSpec& spec) {
  CutoffResult out;
  out.running_averages.reserve(p_values.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < p_values.size(); ++k) {
    sum += accumulation_value(p_values[k], spec);
    const double avg = sum / static_cast<double>(k + 1);
    out.running_averages.push_back(avg);
    if (avg <= spec.alpha) out.k_hat = k + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Candidate grid

enum class GridSource { PercentileGrid, Explicit };

struct CandidateGrid {
  std::vector<double> thresholds;  // strictly ascending
  GridSource source = GridSource::PercentileGrid;
};

inline std::size_t count_at_or_above(std::span<const double> sorted, double threshold) {
  return static_cast<std::size_t>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), threshold));
}

// `count` equally spaced percentile levels in [lower_pct, upper_pct], mapped
// through the empirical quantile; duplicates dropped, and candidates leaving
// fewer than `min_exceedances` points at or above them dropped from the top.
inline CandidateGrid build_candidate_grid(std::span<const double> data, double lower_pct, double upper_pct,
                                          std::size_t count, std::size_t min_exceedances = 10) {
  if (count < 2) fail(ErrorKind::Validation, "candidate grid needs at least 2 points");
  if (!(lower_pct >= 0.0 && upper_pct <= 1.0 && lower_pct < upper_pct))
    fail(ErrorKind::Validation, "grid percentiles must satisfy 0 <= lower < upper <= 1");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  CandidateGrid grid;
  for (std::size_t j = 0; j < count; ++j) {
    const double level = lower_pct + (upper_pct - lower_pct) * static_cast<double>(j) / static_cast<double>(count - 1);
    const double mu = quantile_sorted(sorted, level);
    if (!grid.thresholds.empty() && !(mu > grid.thresholds.back())) continue;
    grid.thresholds.push_back(mu);
  }
  while (!grid.thresholds.empty() && count_at_or_above(sorted, grid.thresholds.back()) < min_exceedances)
    grid.thresholds.pop_back();
  if (grid.thresholds.size() < 2) fail(ErrorKind::DegenerateGrid, "fewer than 2 distinct candidate thresholds");
  return grid;
}

inline CandidateGrid explicit_grid(std::vector<double> thresholds) {
  if (thresholds.size() < 2) fail(ErrorKind::DegenerateGrid, "an explicit grid needs at least 2 thresholds");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (!(thresholds[i] > thresholds[i - 1])) fail(ErrorKind::Validation, "explicit grid must be strictly ascending");
  return {std::move(thresholds), GridSource::Explicit};
}

// ---------------------------------------------------------------------------
// Selection pipeline

enum class SelectionStatus { Selected, NoneRejectedDefaultFirst, AllRejectedNoThreshold };

constexpr std::string_view to_string(SelectionStatus s) {
  switch (s) {
    case SelectionStatus::Selected: return "selected";
    case SelectionStatus::NoneRejectedDefaultFirst: return "none-rejected-default-first";
    case SelectionStatus::AllRejectedNoThreshold: return "all-rejected-no-threshold";
  }
  return "?";
}

struct CandidateOutcome {
  double threshold = 0.0;
  std::optional<GpdFit> fit;  // empty when the fit failed
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = 0.0;
  PValueMethod method = PValueMethod::TableInterpolation;
  bool fit_failed = false;
  bool used_fallback = false;
  std::string note;
};

// Per-candidate fits and p-values; independent of the accumulation test.
struct CandidateEvaluation {
  CandidateGrid grid;
  std::vector<CandidateOutcome> candidates;

  [[nodiscard]] std::vector<double> p_values() const {
    std::vector<double> p;
    p.reserve(candidates.size());
    for (const auto& c : candidates) p.push_back(c.p_value);
    return p;
  }
};

struct SelectionResult {
  CandidateGrid grid;
  std::vector<double> p_values;
  std::vector<double> running_averages;
  std::size_t k_hat = 0;
  std::optional<double> chosen_threshold;
  std::optional<std::size_t> chosen_index;
  std::vector<CandidateOutcome> candidates;
  SelectionStatus status = SelectionStatus::Selected;

  [[nodiscard]] const GpdFit* chosen_fit() const {
    if (!chosen_index) return nullptr;
    const auto& fit = candidates[*chosen_index].fit;
    return fit ? &*fit : nullptr;
  }
};

struct SelectOptions {
  GofOptions gof;
  std::uint64_t seed = 0;  // bootstrap seeds derive from this and the candidate index
};

inline CandidateEvaluation evaluate_candidates(std::span<const double> data, const CandidateGrid& grid,
                                               const SelectOptions& options = {}) {
  CandidateEvaluation eval;
  eval.grid = grid;
  eval.candidates.reserve(grid.thresholds.size());
  for (std::size_t j = 0; j < grid.thresholds.size(); ++j) {
    CandidateOutcome out;
    out.threshold = grid.thresholds[j];
    GofOptions gof = options.gof;
    gof.bootstrap.seed = derive_seed(options.seed, j);
    try {
      const auto result = gof_test_detailed(data, out.threshold, gof);
      out.fit = result.fit;
      out.statistic = result.ad.statistic;
      out.p_value = result.ad.p_value;
      out.method = result.ad.method;
      out.used_fallback = result.used_fallback;
    } catch (const Error& e) {
      // treated as a rejection
      out.fit_failed = true;
      out.p_value = 0.0;
      out.note = e.what();
    }
    eval.candidates.push_back(std::move(out));
  }
  return eval;
}

inline SelectionResult apply_accumulation(const CandidateEvaluation& eval, const AccumulationSpec& spec) {
  spec.validate();
  SelectionResult result;
  result.grid = eval.grid;
  result.candidates = eval.candidates;
  result.p_values = eval.p_values();
  auto cutoff = accumulation_cutoff(result.p_values, spec);
  result.k_hat = cutoff.k_hat;
  result.running_averages = std::move(cutoff.running_averages);
  const std::size_t l = result.p_values.size();
  if (result.k_hat == l) {
    result.status = SelectionStatus::AllRejectedNoThreshold;
  } else {
    result.status = result.k_hat == 0 ? SelectionStatus::NoneRejectedDefaultFirst : SelectionStatus::Selected;
    result.chosen_index = result.k_hat;
    result.chosen_threshold = eval.grid.thresholds[result.k_hat];
  }
  return result;
}

inline SelectionResult select_threshold(std::span<const double> data, const CandidateGrid& grid,
                                        const AccumulationSpec& spec, const SelectOptions& options = {}) {
  spec.validate();
  return apply_accumulation(evaluate_candidates(data, grid, options), spec);
}

}  // namespace potkit
