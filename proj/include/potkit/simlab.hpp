#pragma once

// Monte Carlo harness: composite lognormal-head / GPD-tail samplers, repeated
// threshold selection over seeded replicates, and mean / RMSE aggregation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "potkit/error.hpp"
#include "potkit/gpd.hpp"
#include "potkit/normal.hpp"
#include "potkit/rng.hpp"
#include "potkit/select.hpp"

namespace potkit {

struct LognormalHead {
  double meanlog = 0.0;
  double sdlog = 1.0;

  friend bool operator==(const LognormalHead&, const LognormalHead&) = default;
};

struct GridConfig {
  double lower_pct = 0.01;
  double upper_pct = 0.90;
  std::size_t count = 20;
  std::size_t min_exceedances = 10;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct ScenarioSpec {
  std::string name;
  std::optional<LognormalHead> head;
  GpdParams tail{0.5, 1.0, 1.0};
  double head_weight = 0.0;
  double tail_weight = 1.0;
  double true_threshold = 0.5;
  std::size_t sample_size = 500;
  std::size_t replicates = 1000;
  AccumulationSpec accumulation;
  GridConfig grid;
  std::uint64_t base_seed = 1;
  PValueMethod gof_method = PValueMethod::TableInterpolation;
  unsigned threads = 0;  // 0: hardware concurrency; results do not depend on it

  void validate() const {
    tail.validate();
    accumulation.validate();
    if (sample_size < 2) fail(ErrorKind::InvalidSpec, "sample size must be at least 2");
    if (replicates == 0) fail(ErrorKind::InvalidSpec, "replicates must be positive");
    if (!(head_weight >= 0.0 && head_weight <= 1.0 && tail_weight >= 0.0 && tail_weight <= 1.0))
      fail(ErrorKind::InvalidSpec, "mixture weights must lie in [0, 1]");
    if (head) {
      if (!(head->sdlog > 0.0)) fail(ErrorKind::InvalidSpec, "lognormal sdlog must be positive");
      if (std::abs(head_weight + tail_weight - 1.0) > 1e-12) fail(ErrorKind::InvalidSpec, "head and tail weights must sum to 1");
      if (head_weight > 0.0 && head_mass() < 1e-6)
        fail(ErrorKind::InvalidSpec, "lognormal head has negligible mass below the threshold");
    } else if (std::abs(tail_weight - 1.0) > 1e-12) {
      fail(ErrorKind::InvalidSpec, "a pure GPD scenario needs tail weight 1");
    }
    if (std::abs(true_threshold - tail.mu) > 1e-12) fail(ErrorKind::InvalidSpec, "true threshold must equal the tail location");
  }

  // Lognormal probability below the threshold.
  [[nodiscard]] double head_mass() const {
    if (!head || !(true_threshold > 0.0)) return 0.0;
    return normal::cdf((std::log(true_threshold) - head->meanlog) / head->sdlog);
  }
};

// Draws `count` values: with probability head_weight a lognormal variate
// right-truncated at the threshold (inverse CDF of the renormalized head),
// otherwise a GPD(tail) variate.
inline std::vector<double> sample_composite(const ScenarioSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  Engine rng(seed);
  if (!spec.head || spec.head_weight == 0.0) return gpd_sample(spec.tail, count, rng);
  const double mass = spec.head_mass();
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double pick = uniform(rng);
    const double u = uniform(rng);
    if (pick < spec.head_weight) {
      // keep the level strictly inside (0, mass)
      const double level = std::max(u * mass, 1e-300);
      out.push_back(std::min(std::exp(spec.head->meanlog + spec.head->sdlog * normal::quantile(level)), spec.true_threshold));
    } else {
      out.push_back(gpd_quantile(u, spec.tail));
    }
  }
  return out;
}

struct ScenarioResult {
  double mean_threshold = std::numeric_limits<double>::quiet_NaN();
  double rmse = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::optional<double>> per_replicate_thresholds;
  std::size_t failure_count = 0;

  [[nodiscard]] std::size_t success_count() const { return per_replicate_thresholds.size() - failure_count; }
};

// Mean and RMSE over the replicates that produced a threshold.
inline ScenarioResult aggregate_thresholds(std::vector<std::optional<double>> chosen, double true_threshold) {
  ScenarioResult r;
  double sum = 0.0;
  double sq = 0.0;
  std::size_t ok = 0;
  for (const auto& c : chosen) {
    if (!c) {
      ++r.failure_count;
      continue;
    }
    ++ok;
    sum += *c;
    sq += (*c - true_threshold) * (*c - true_threshold);
  }
  if (ok > 0) {
    r.mean_threshold = sum / static_cast<double>(ok);
    r.rmse = std::sqrt(sq / static_cast<double>(ok));
  }
  r.per_replicate_thresholds = std::move(chosen);
  return r;
}

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
}

}  // namespace detail

// Runs the replicates of `spec` once and applies every accumulation test in
// `tests` to the same candidate p-values. The test in spec.accumulation is
// ignored.
inline std::vector<ScenarioResult> run_scenario_tests(const ScenarioSpec& spec, const std::vector<AccumulationSpec>& tests) {
  spec.validate();
  for (const auto& t : tests) t.validate();
  std::vector<std::vector<std::optional<double>>> chosen(tests.size(),
                                                         std::vector<std::optional<double>>(spec.replicates));
  detail::parallel_for(spec.replicates, spec.threads, [&](std::size_t i) {
    const std::uint64_t seed = spec.base_seed + i;
    const auto data = sample_composite(spec, spec.sample_size, seed);
    CandidateEvaluation eval;
    try {
      const auto grid = build_candidate_grid(data, spec.grid.lower_pct, spec.grid.upper_pct, spec.grid.count,
                                             spec.grid.min_exceedances);
      SelectOptions options;
      options.seed = seed;
      options.gof.method = spec.gof_method;
      options.gof.fit.min_exceedances = spec.grid.min_exceedances;
      eval = evaluate_candidates(data, grid, options);
    } catch (const Error&) {
      return;  // degenerate replicate: counted as a failure for every test
    }
    for (std::size_t t = 0; t < tests.size(); ++t) chosen[t][i] = apply_accumulation(eval, tests[t]).chosen_threshold;
  });
  std::vector<ScenarioResult> results;
  for (auto& c : chosen) results.push_back(aggregate_thresholds(std::move(c), spec.true_threshold));
  return results;
}

inline ScenarioResult run_scenario(const ScenarioSpec& spec) {
  return run_scenario_tests(spec, {spec.accumulation}).front();
}

// ---------------------------------------------------------------------------
// Tabulation

struct ScenarioTableRow {
  std::string scenario;
  double true_threshold = 0.0;
  std::optional<double> head_weight;
  double tail_weight = 1.0;
  std::size_t sample_size = 0;
  AccumulationSpec test;
  ScenarioResult result;
};

struct ScenarioTable {
  std::vector<ScenarioTableRow> rows;
};

// Specs that differ only in their accumulation test share one set of sampled
// replicates and candidate p-values.
inline ScenarioTable scenario_table(const std::vector<ScenarioSpec>& specs) {
  if (specs.empty()) fail(ErrorKind::Validation, "no scenarios to run");
  ScenarioTable table;
  table.rows.resize(specs.size());
  std::vector<bool> done(specs.size(), false);
  auto same_sampling = [](const ScenarioSpec& a, const ScenarioSpec& b) {
    return a.name == b.name && a.head == b.head && a.tail == b.tail && a.head_weight == b.head_weight &&
           a.tail_weight == b.tail_weight && a.true_threshold == b.true_threshold && a.sample_size == b.sample_size &&
           a.replicates == b.replicates && a.grid == b.grid && a.base_seed == b.base_seed && a.gof_method == b.gof_method;
  };
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    std::vector<AccumulationSpec> tests;
    for (std::size_t j = i; j < specs.size(); ++j) {
      if (!done[j] && same_sampling(specs[i], specs[j])) {
        members.push_back(j);
        tests.push_back(specs[j].accumulation);
        done[j] = true;
      }
    }
    auto results = run_scenario_tests(specs[i], tests);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto& s = specs[members[m]];
      auto& row = table.rows[members[m]];
      row.scenario = s.name;
      row.true_threshold = s.true_threshold;
      if (s.head) row.head_weight = s.head_weight;
      row.tail_weight = s.tail_weight;
      row.sample_size = s.sample_size;
      row.test = s.accumulation;
      row.result = std::move(results[m]);
    }
  }
  return table;
}

inline std::string test_label(const AccumulationSpec& t) {
  std::ostringstream out;
  out << to_string(t.kind);
  if (t.kind != AccumulationKind::ForwardStop) out << "(C=" << t.c_param << ")";
  return out.str();
}

inline std::string scenario_table_csv(const ScenarioTable& table) {
  std::ostringstream out;
  out << "scenario,true_threshold,head_weight,tail_weight,sample_size,test,c,alpha,mean,rmse,successes,failures\n";
  out << std::setprecision(10);
  for (const auto& r : table.rows) {
    out << '"' << r.scenario << "\"," << r.true_threshold << ',';
    if (r.head_weight) out << *r.head_weight;
    out << ',' << r.tail_weight << ',' << r.sample_size << ',' << to_string(r.test.kind) << ',' << r.test.c_param << ','
        << r.test.alpha << ',' << r.result.mean_threshold << ',' << r.result.rmse << ',' << r.result.success_count()
        << ',' << r.result.failure_count << '\n';
  }
  return out.str();
}

// Aligned text: one line per (scenario, sample size, alpha), a Mean / RMSE pair per test.
inline std::string scenario_table_text(const ScenarioTable& table) {
  std::vector<std::string> tests;
  using Key = std::tuple<std::string, std::size_t, double>;
  std::vector<Key> keys;
  std::map<std::pair<Key, std::string>, const ScenarioTableRow*> cells;
  std::map<Key, const ScenarioTableRow*> first;
  for (const auto& r : table.rows) {
    const auto label = test_label(r.test);
    if (std::find(tests.begin(), tests.end(), label) == tests.end()) tests.push_back(label);
    Key key{r.scenario, r.sample_size, r.test.alpha};
    if (!first.count(key)) {
      first[key] = &r;
      keys.push_back(key);
    }
    cells[{key, label}] = &r;
  }
  std::ostringstream out;
  out << std::left << std::setw(28) << "Scenario" << std::setw(8) << "Thresh" << std::setw(7) << "Head" << std::setw(7)
      << "Tail" << std::setw(7) << "alpha" << std::setw(8) << "n";
  for (const auto& t : tests) out << std::setw(22) << t;
  out << '\n' << std::setw(67) << "";
  for (std::size_t t = 0; t < tests.size(); ++t) out << std::setw(11) << "Mean" << std::setw(11) << "RMSE";
  out << '\n';
  out << std::fixed;
  for (const auto& key : keys) {
    const auto* r = first[key];
    std::ostringstream head;
    if (r->head_weight) head << std::setprecision(1) << std::fixed << *r->head_weight;
    else head << "-";
    std::ostringstream tail;
    if (r->head_weight) tail << std::setprecision(1) << std::fixed << r->tail_weight;
    else tail << "-";
    out << std::setw(28) << std::get<0>(key).substr(0, 27) << std::setprecision(3) << std::setw(8) << r->true_threshold
        << std::setw(7) << head.str() << std::setw(7) << tail.str() << std::setprecision(2) << std::setw(7)
        << std::get<2>(key) << std::setw(8) << ("n=" + std::to_string(std::get<1>(key)));
    out << std::setprecision(3);
    for (const auto& t : tests) {
      const auto it = cells.find({key, t});
      if (it == cells.end()) {
        out << std::setw(11) << "" << std::setw(11) << "";
      } else {
        out << std::setw(11) << it->second->result.mean_threshold << std::setw(11) << it->second->result.rmse;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace potkit
