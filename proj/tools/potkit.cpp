// potkit command-line frontend: summarize | select | var | simulate | plot-cdf.
//
// Exit codes: 0 success, 2 validation, 3 data, 4 no threshold, 5 numerical.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "potkit/data_io.hpp"
#include "potkit/gof.hpp"
#include "potkit/risk.hpp"
#include "potkit/select.hpp"
#include "potkit/simlab.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace potkit;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kValidation = 2, kData = 3, kNoThreshold = 4, kNumerical = 5 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation:
    case ErrorKind::InvalidSpec:
      return kValidation;
    case ErrorKind::FileUnreadable:
    case ErrorKind::SchemaMismatch:
    case ErrorKind::EmptyAfterParse:
    case ErrorKind::YearAbsent:
    case ErrorKind::InsufficientData:
    case ErrorKind::DegenerateGrid:
      return kData;
    default:
      return kNumerical;
  }
}

struct Options {
  std::string input;
  std::vector<int> years;
  double scale = 1e6;
  std::optional<double> floor;
  std::string out;
  std::vector<std::string> formats{"json", "text"};
  std::vector<std::string> tests{"ForwardStop"};
  double alpha = 0.01;
  double c = 2.0;
  double grid_lower = 0.01;
  double grid_upper = 0.98;
  std::size_t grid_count = 30;
  std::size_t min_exceedances = 10;
  std::string gof = "table";
  std::size_t bootstrap_replicates = 499;
  std::uint64_t seed = 1;
  std::vector<double> levels{0.90, 0.95};
  double ci_level = 0.95;
  std::optional<double> threshold;
  std::size_t plot_points = 200;
  double plot_upper = 0.99;
  // simulate
  std::string scenarios;
  std::optional<std::size_t> replicates;
  unsigned threads = 0;
};

// Files are staged in memory and written only once every computation succeeded.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;
  std::string console;

  void add(const Options& o, const std::string& name, const std::string& format, std::string body) {
    if (format == "text") console += body;
    if (o.out.empty()) return;
    // plot artifacts are the point of plot-cdf and are always written
    if (format != "plot" && std::find(o.formats.begin(), o.formats.end(), format) == o.formats.end()) return;
    files.emplace_back(name, std::move(body));
  }

  void commit(const Options& o) const {
    if (!o.out.empty()) {
      fs::create_directories(o.out);
      for (const auto& [name, body] : files) {
        std::ofstream f(fs::path(o.out) / name, std::ios::binary);
        if (!f) fail(ErrorKind::FileUnreadable, "cannot write " + (fs::path(o.out) / name).string());
        f << body;
      }
    }
    std::cout << console;
  }
};

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string fixed(double v, int digits = 3) {
  if (!std::isfinite(v)) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string resolve_input(const std::string& input) {
  const char* dir = std::getenv("POTKIT_DATA_DIR");
  std::string path = input.empty() ? "norwegian_fire.csv" : input;
  if (dir && *dir && fs::path(path).is_relative() && !fs::exists(path)) path = (fs::path(dir) / path).string();
  return path;
}

std::vector<AccumulationSpec> test_specs(const Options& o) {
  std::vector<AccumulationSpec> out;
  for (const auto& name : o.tests) {
    AccumulationSpec s{parse_accumulation_kind(name), o.c, o.alpha};
    s.validate();
    out.push_back(s);
  }
  return out;
}

void validate(const Options& o, bool needs_levels) {
  if (!(o.scale > 0.0)) fail(ErrorKind::Validation, "--scale must be positive");
  if (!(o.grid_lower >= 0.0 && o.grid_upper <= 1.0 && o.grid_lower < o.grid_upper))
    fail(ErrorKind::Validation, "grid bounds must satisfy 0 <= lower < upper <= 1");
  if (o.grid_count < 2) fail(ErrorKind::Validation, "--grid-count must be at least 2");
  if (o.min_exceedances < 2) fail(ErrorKind::Validation, "--min-exceedances must be at least 2");
  if (o.gof != "table" && o.gof != "bootstrap") fail(ErrorKind::Validation, "--gof must be 'table' or 'bootstrap'");
  if (o.bootstrap_replicates == 0) fail(ErrorKind::Validation, "--bootstrap-replicates must be positive");
  if (!(o.plot_upper > 0.0 && o.plot_upper <= 1.0)) fail(ErrorKind::Validation, "--plot-upper must lie in (0, 1]");
  if (o.plot_points < 2) fail(ErrorKind::Validation, "--plot-points must be at least 2");
  for (const auto& f : o.formats)
    if (f != "json" && f != "text" && f != "csv") fail(ErrorKind::Validation, "unknown format '" + f + "'");
  if (needs_levels) {
    if (o.levels.empty()) fail(ErrorKind::Validation, "at least one --level is required");
    for (double l : o.levels)
      if (!(l > 0.0 && l < 1.0)) fail(ErrorKind::Validation, "--level values must lie in (0, 1)");
    if (!(o.ci_level > 0.0 && o.ci_level < 1.0)) fail(ErrorKind::Validation, "--ci-level must lie in (0, 1)");
  }
  test_specs(o);
}

ClaimsDataset load(const Options& o) {
  LoadOptions lo;
  lo.scale_factor = o.scale;
  lo.truncation_floor = o.floor;
  auto data = load_claims(resolve_input(o.input), lo);
  if (data.malformed_rows > 0) std::cerr << "warning: skipped " << data.malformed_rows << " malformed rows\n";
  if (data.below_floor_rows > 0) std::cerr << "warning: dropped " << data.below_floor_rows << " rows below the floor\n";
  return data;
}

std::vector<int> years_of(const Options& o, const ClaimsDataset& data) {
  if (o.years.empty()) return data.years();
  for (int y : o.years) filter_year(data, y);  // YearAbsent before any work
  return o.years;
}

json dataset_json(const Options& o, const ClaimsDataset& data) {
  json j;
  j["source"] = data.source_path;
  j["scale_factor"] = o.scale;
  j["malformed_rows"] = data.malformed_rows;
  j["below_floor_rows"] = data.below_floor_rows;
  if (o.floor) j["truncation_floor"] = *o.floor;
  return j;
}

// ---------------------------------------------------------------------------

int cmd_summarize(const Options& o) {
  validate(o, false);
  const auto data = load(o);
  json rows = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  text << std::left << std::setw(8) << "Year" << std::right << std::setw(8) << "n" << std::setw(10) << "Mean"
       << std::setw(10) << "SD" << std::setw(10) << "Q1" << std::setw(10) << "Q2" << std::setw(10) << "Q3"
       << std::setw(11) << "Max" << '\n';
  csv << "year,n,mean,sd,q1,q2,q3,max\n" << std::setprecision(17);
  for (int year : years_of(o, data)) {
    const auto s = summary_stats(filter_year(data, year));
    rows.push_back({{"year", year}, {"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"q1", s.q1}, {"q2", s.q2}, {"q3", s.q3},
                    {"max", s.max}});
    text << std::left << std::setw(8) << year << std::right << std::setw(8) << s.n << std::setw(10) << fixed(s.mean)
         << std::setw(10) << fixed(s.sd) << std::setw(10) << fixed(s.q1) << std::setw(10) << fixed(s.q2) << std::setw(10)
         << fixed(s.q3) << std::setw(11) << fixed(s.max) << '\n';
    csv << year << ',' << s.n << ',' << s.mean << ',' << s.sd << ',' << s.q1 << ',' << s.q2 << ',' << s.q3 << ',' << s.max
        << '\n';
  }
  json doc{{"schema_version", kSchemaVersion}, {"command", "summarize"}, {"dataset", dataset_json(o, data)}, {"years", rows}};
  Outputs out;
  out.add(o, "summary.json", "json", json_text(doc));
  out.add(o, "summary.txt", "text", text.str());
  out.add(o, "summary.csv", "csv", csv.str());
  out.commit(o);
  return kOk;
}

// ---------------------------------------------------------------------------

struct YearSelection {
  int year = 0;
  std::vector<double> data;
  std::vector<std::pair<AccumulationSpec, SelectionResult>> results;  // one per test
  std::optional<GpdFit> explicit_fit;
};

std::vector<YearSelection> run_selection(const Options& o, const ClaimsDataset& dataset) {
  const auto tests = test_specs(o);
  std::vector<YearSelection> out;
  for (int year : years_of(o, dataset)) {
    YearSelection ys;
    ys.year = year;
    ys.data = filter_year(dataset, year);
    if (o.threshold) {
      FitOptions fo;
      fo.min_exceedances = o.min_exceedances;
      ys.explicit_fit = fit_gpd(ExceedanceSet::above(ys.data, *o.threshold), fo);
    } else {
      const auto grid = build_candidate_grid(ys.data, o.grid_lower, o.grid_upper, o.grid_count, o.min_exceedances);
      SelectOptions so;
      so.seed = derive_seed(o.seed, static_cast<std::uint64_t>(year));
      so.gof.method = o.gof == "bootstrap" ? PValueMethod::ParametricBootstrap : PValueMethod::TableInterpolation;
      so.gof.bootstrap.replicates = o.bootstrap_replicates;
      so.gof.fit.min_exceedances = o.min_exceedances;
      const auto eval = evaluate_candidates(ys.data, grid, so);
      for (const auto& t : tests) ys.results.emplace_back(t, apply_accumulation(eval, t));
    }
    out.push_back(std::move(ys));
  }
  return out;
}

std::string method_label(const AccumulationSpec& t) {
  std::ostringstream s;
  s << test_label(t) << " alpha=" << t.alpha;
  return s.str();
}

json fit_json(const GpdFit& f) {
  return {{"mu", f.params.mu},
          {"sigma", f.params.sigma},
          {"gamma", f.params.gamma},
          {"n_exceedances", f.n_exceedances},
          {"log_likelihood", f.log_likelihood},
          {"regular", f.mle_regularity_ok}};
}

json selection_json(const SelectionResult& r) {
  json cands = json::array();
  for (std::size_t j = 0; j < r.candidates.size(); ++j) {
    const auto& c = r.candidates[j];
    json cj{{"threshold", c.threshold},
            {"p_value", c.p_value},
            {"running_average", r.running_averages[j]},
            {"p_value_method", std::string(to_string(c.method))},
            {"fit_failed", c.fit_failed}};
    if (c.fit) {
      cj["sigma"] = c.fit->params.sigma;
      cj["gamma"] = c.fit->params.gamma;
      cj["n_exceedances"] = c.fit->n_exceedances;
      cj["ad_statistic"] = c.statistic;
    }
    if (!c.note.empty()) cj["note"] = c.note;
    cands.push_back(cj);
  }
  json j{{"k_hat", r.k_hat}, {"status", std::string(to_string(r.status))}, {"candidates", cands}};
  j["chosen_threshold"] = r.chosen_threshold ? json(*r.chosen_threshold) : json(nullptr);
  j["fit"] = r.chosen_fit() ? fit_json(*r.chosen_fit()) : json(nullptr);
  return j;
}

json test_json(const AccumulationSpec& t) {
  json j{{"kind", std::string(to_string(t.kind))}, {"alpha", t.alpha}};
  if (t.kind != AccumulationKind::ForwardStop) j["c"] = t.c_param;
  return j;
}

json settings_json(const Options& o) {
  json j{{"grid", {{"lower_pct", o.grid_lower}, {"upper_pct", o.grid_upper}, {"count", o.grid_count},
                   {"min_exceedances", o.min_exceedances}}},
         {"gof", o.gof},
         {"seed", o.seed}};
  if (o.gof == "bootstrap") j["bootstrap_replicates"] = o.bootstrap_replicates;
  if (o.threshold) j["threshold"] = *o.threshold;
  return j;
}

int cmd_select(const Options& o) {
  validate(o, false);
  if (o.threshold) fail(ErrorKind::Validation, "--threshold applies to var and plot-cdf, not select");
  const auto dataset = load(o);
  const auto selections = run_selection(o, dataset);
  bool missing = false;
  json years = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  text << std::left << std::setw(7) << "Year" << std::setw(30) << "Test" << std::right << std::setw(10) << "mu"
       << std::setw(10) << "sigma" << std::setw(10) << "gamma" << std::setw(7) << "k_hat" << std::setw(7) << "l"
       << "  status\n";
  csv << "year,test,c,alpha,candidate,threshold,p_value,running_average,fit_failed\n" << std::setprecision(17);
  for (const auto& ys : selections) {
    json per_test = json::array();
    for (const auto& [t, r] : ys.results) {
      json tj = selection_json(r);
      tj["test"] = test_json(t);
      per_test.push_back(tj);
      if (!r.chosen_threshold) missing = true;
      const auto* fit = r.chosen_fit();
      text << std::left << std::setw(7) << ys.year << std::setw(30) << method_label(t) << std::right << std::setw(10)
           << (r.chosen_threshold ? fixed(*r.chosen_threshold) : "-") << std::setw(10)
           << (fit ? fixed(fit->params.sigma) : "-") << std::setw(10) << (fit ? fixed(fit->params.gamma) : "-")
           << std::setw(7) << r.k_hat << std::setw(7) << r.p_values.size() << "  " << to_string(r.status) << '\n';
      for (std::size_t j = 0; j < r.candidates.size(); ++j)
        csv << ys.year << ',' << to_string(t.kind) << ',' << t.c_param << ',' << t.alpha << ',' << j + 1 << ','
            << r.candidates[j].threshold << ',' << r.p_values[j] << ',' << r.running_averages[j] << ','
            << (r.candidates[j].fit_failed ? 1 : 0) << '\n';
    }
    years.push_back({{"year", ys.year}, {"n", ys.data.size()}, {"selections", per_test}});
  }
  json doc{{"schema_version", kSchemaVersion}, {"command", "select"}, {"dataset", dataset_json(o, dataset)},
           {"settings", settings_json(o)}, {"years", years}};
  Outputs out;
  out.add(o, "select.json", "json", json_text(doc));
  out.add(o, "select.txt", "text", text.str());
  out.add(o, "select_candidates.csv", "csv", csv.str());
  out.commit(o);
  return missing ? kNoThreshold : kOk;
}

// ---------------------------------------------------------------------------

int cmd_var(const Options& o) {
  validate(o, true);
  const auto dataset = load(o);
  const auto selections = run_selection(o, dataset);
  int code = kOk;
  json years = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  text << std::left << std::setw(7) << "Year" << std::setw(30) << "Model" << std::right;
  for (double l : o.levels) text << std::setw(26) << ("VaR(" + fixed(l, 2) + ")");
  text << '\n';
  csv << "year,model,level,var,ci_lower,ci_upper,omega,empirical,outside_ci\n" << std::setprecision(17);

  for (const auto& ys : selections) {
    json yj{{"year", ys.year}, {"n", ys.data.size()}};
    json emp = json::object();
    text << std::left << std::setw(7) << ys.year << std::setw(30) << "Empirical" << std::right;
    std::vector<double> empirical;
    for (double l : o.levels) {
      empirical.push_back(empirical_var(ys.data, l));
      emp[fixed(l, 4)] = empirical.back();
      text << std::setw(26) << fixed(empirical.back(), 2);
      csv << ys.year << ",empirical," << l << ',' << empirical.back() << ",,,,,\n";
    }
    text << '\n';
    yj["empirical"] = emp;

    std::vector<std::tuple<std::string, json, const GpdFit*>> models;
    if (ys.explicit_fit) models.emplace_back("threshold=" + fixed(*o.threshold), json{{"threshold", *o.threshold}}, &*ys.explicit_fit);
    for (const auto& [t, r] : ys.results) {
      json mj{{"test", test_json(t)}, {"status", std::string(to_string(r.status))}, {"k_hat", r.k_hat}};
      mj["threshold"] = r.chosen_threshold ? json(*r.chosen_threshold) : json(nullptr);
      models.emplace_back(method_label(t), mj, r.chosen_fit());
    }

    json mlist = json::array();
    for (auto& [label, mj, fit] : models) {
      text << std::left << std::setw(7) << "" << std::setw(30) << label << std::right;
      if (!fit) {
        code = std::max(code, static_cast<int>(kNoThreshold));
        mj["fit"] = nullptr;
        mj["estimates"] = json::array();
        for (std::size_t i = 0; i < o.levels.size(); ++i) text << std::setw(26) << "no threshold";
        text << '\n';
        mlist.push_back(mj);
        continue;
      }
      mj["fit"] = fit_json(*fit);
      json est = json::array();
      for (std::size_t i = 0; i < o.levels.size(); ++i) {
        try {
          const auto v = var_with_ci(*fit, o.levels[i], o.ci_level);
          const bool outside = !v.covers(empirical[i]);
          est.push_back({{"level", v.level}, {"var", v.var}, {"ci_lower", v.ci_lower}, {"ci_upper", v.ci_upper},
                         {"ci_level", v.ci_level}, {"omega", v.omega}, {"n", v.n}, {"empirical", empirical[i]},
                         {"outside_ci", outside}});
          std::string cell = fixed(v.var, 2) + " (" + fixed(v.ci_lower, 2) + ", " + fixed(v.ci_upper, 2) + ")";
          if (outside) cell += "*";
          text << std::setw(26) << cell;
          csv << ys.year << ",\"" << label << "\"," << v.level << ',' << v.var << ',' << v.ci_lower << ',' << v.ci_upper
              << ',' << v.omega << ',' << empirical[i] << ',' << (outside ? 1 : 0) << '\n';
        } catch (const Error& e) {
          code = std::max(code, exit_code(e.kind()));
          est.push_back({{"level", o.levels[i]}, {"error", e.what()}});
          text << std::setw(26) << "n/a";
        }
      }
      text << '\n';
      mj["estimates"] = est;
      mlist.push_back(mj);
    }
    yj["models"] = mlist;
    years.push_back(yj);
  }
  text << "* confidence interval does not cover the empirical VaR\n";
  json doc{{"schema_version", kSchemaVersion}, {"command", "var"}, {"dataset", dataset_json(o, dataset)},
           {"settings", settings_json(o)}, {"ci_level", o.ci_level}, {"years", years}};
  Outputs out;
  out.add(o, "var.json", "json", json_text(doc));
  out.add(o, "var.txt", "text", text.str());
  out.add(o, "var.csv", "csv", csv.str());
  out.commit(o);
  return code;
}

// ---------------------------------------------------------------------------

struct Curve {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::string svg_plot(int year, const std::vector<Curve>& curves, double x0, double x1) {
  const double w = 640, h = 420, left = 60, right = 20, top = 30, bottom = 50;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto sy = [&](double y) { return h - bottom - y * (h - top - bottom); };
  static const char* colors[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream s;
  s << std::setprecision(6);
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">CDF comparison, " << year << "</text>\n"
    << "<line x1=\"" << left << "\" y1=\"" << sy(0) << "\" x2=\"" << w - right << "\" y2=\"" << sy(0) << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << left << "\" y1=\"" << sy(0) << "\" x2=\"" << left << "\" y2=\"" << sy(1) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = i / 4.0;
    const double x = x0 + (x1 - x0) * i / 4.0;
    s << "<text x=\"" << left - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << y << "</text>\n"
      << "<text x=\"" << sx(x) << "\" y=\"" << h - bottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << fixed(x, 2)
      << "</text>\n";
  }
  s << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 10
    << "\" text-anchor=\"middle\" font-size=\"12\">claim size (scaled units)</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = colors[c % 6];
    s << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < curves[c].points.size(); ++i)
      s << (i ? " L" : "M") << sx(curves[c].points[i].first) << ',' << sy(curves[c].points[i].second);
    s << "\"/>\n";
    s << "<text x=\"" << w - right - 4 << "\" y=\"" << sy(0.05) - 14.0 * c << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
      << color << "\">" << curves[c].name << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_plot_cdf(const Options& o) {
  validate(o, false);
  const auto dataset = load(o);
  const auto selections = run_selection(o, dataset);
  int code = kOk;
  std::ostringstream csv;
  csv << "year,curve,x,cdf\n" << std::setprecision(17);
  Outputs out;
  json years = json::array();
  std::ostringstream text;
  for (const auto& ys : selections) {
    const Ecdf ecdf(ys.data);
    const double x0 = ys.data.front();
    const double x1 = o.plot_upper >= 1.0 ? ys.data.back() : empirical_var(ys.data, o.plot_upper);
    std::vector<double> xs(o.plot_points);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(xs.size() - 1);

    std::vector<Curve> curves;
    Curve emp{"empirical", {}};
    for (double x : xs) emp.points.emplace_back(x, ecdf(x));
    curves.push_back(emp);
    std::vector<std::pair<std::string, const GpdFit*>> models;
    if (ys.explicit_fit) models.emplace_back("threshold=" + fixed(*o.threshold), &*ys.explicit_fit);
    for (const auto& [t, r] : ys.results) {
      models.emplace_back(method_label(t), r.chosen_fit());
      if (!r.chosen_fit()) code = kNoThreshold;
    }
    json yj{{"year", ys.year}, {"svg", "cdf_" + std::to_string(ys.year) + ".svg"}};
    json mj = json::array();
    for (const auto& [label, fit] : models) {
      if (!fit) {
        mj.push_back({{"model", label}, {"fit", nullptr}});
        continue;
      }
      mj.push_back({{"model", label}, {"fit", fit_json(*fit)}});
      Curve cv{label, {}};
      for (double x : xs)
        if (x >= fit->params.mu) cv.points.emplace_back(x, gpd_cdf(x, fit->params));
      curves.push_back(cv);
    }
    yj["models"] = mj;
    years.push_back(yj);
    for (const auto& cv : curves)
      for (const auto& [x, f] : cv.points) csv << ys.year << ",\"" << cv.name << "\"," << x << ',' << f << '\n';
    text << ys.year << ": " << curves.size() << " curves over [" << fixed(x0) << ", " << fixed(x1) << "]\n";
    out.add(o, "cdf_" + std::to_string(ys.year) + ".svg", "plot", svg_plot(ys.year, curves, x0, x1));
  }
  json doc{{"schema_version", kSchemaVersion}, {"command", "plot-cdf"}, {"dataset", dataset_json(o, dataset)},
           {"settings", settings_json(o)}, {"years", years}};
  out.add(o, "cdf_curves.csv", "plot", csv.str());
  out.add(o, "plot_cdf.json", "json", json_text(doc));
  out.add(o, "plot_cdf.txt", "text", text.str());
  out.commit(o);
  return code;
}

// ---------------------------------------------------------------------------
// Scenario files: JSON with top-level defaults overridable per scenario.
//
// {
//   "schema_version": 1,
//   "replicates": 1000, "base_seed": 1, "sample_sizes": [100, 200, 500],
//   "tests": ["ForwardStop", "SeqStep", "HingeExp"], "alpha": 0.01, "c": 2,
//   "grid": {"lower_pct": 0.01, "upper_pct": 0.9, "count": 20, "min_exceedances": 10},
//   "gof": "table",
//   "scenarios": [
//     {"name": "...", "tail": {"mu": 2, "sigma": 0.8, "gamma": 0.8},
//      "head": {"meanlog": 2, "sdlog": 0.5}, "head_weight": 0.3, "tail_weight": 0.7}
//   ]
// }

template <class T>
T pick(const json& scenario, const json& root, const char* key, T fallback) {
  if (scenario.contains(key)) return scenario.at(key).get<T>();
  if (root.contains(key)) return root.at(key).get<T>();
  return fallback;
}

std::vector<ScenarioSpec> parse_scenarios(const std::string& path, const Options& o) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileUnreadable, "cannot open scenario file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::SchemaMismatch, std::string("scenario file: ") + e.what());
  }
  try {
    if (root.value("schema_version", 0) != kSchemaVersion) fail(ErrorKind::SchemaMismatch, "scenario file schema_version must be 1");
    if (!root.contains("scenarios") || !root["scenarios"].is_array() || root["scenarios"].empty())
      fail(ErrorKind::Validation, "scenario file lists no scenarios");
    std::vector<ScenarioSpec> specs;
    for (const auto& sj : root["scenarios"]) {
      ScenarioSpec base;
      base.name = sj.at("name").get<std::string>();
      const auto& tail = sj.at("tail");
      base.tail = {tail.at("mu").get<double>(), tail.at("sigma").get<double>(), tail.at("gamma").get<double>()};
      if (sj.contains("head")) {
        base.head = LognormalHead{sj["head"].at("meanlog").get<double>(), sj["head"].at("sdlog").get<double>()};
        base.head_weight = sj.at("head_weight").get<double>();
        base.tail_weight = sj.value("tail_weight", 1.0 - base.head_weight);
      }
      base.true_threshold = sj.value("true_threshold", base.tail.mu);
      base.replicates = o.replicates ? *o.replicates : pick<std::size_t>(sj, root, "replicates", 1000);
      base.base_seed = pick<std::uint64_t>(sj, root, "base_seed", 1);
      base.threads = o.threads;
      const std::string gof = pick<std::string>(sj, root, "gof", "table");
      if (gof != "table" && gof != "bootstrap") fail(ErrorKind::Validation, "gof must be 'table' or 'bootstrap'");
      base.gof_method = gof == "bootstrap" ? PValueMethod::ParametricBootstrap : PValueMethod::TableInterpolation;
      const json grid = pick<json>(sj, root, "grid", json::object());
      base.grid.lower_pct = grid.value("lower_pct", base.grid.lower_pct);
      base.grid.upper_pct = grid.value("upper_pct", base.grid.upper_pct);
      base.grid.count = grid.value("count", base.grid.count);
      base.grid.min_exceedances = grid.value("min_exceedances", base.grid.min_exceedances);
      const auto sizes = pick<std::vector<std::size_t>>(sj, root, "sample_sizes", {100, 200, 500});
      const auto tests = pick<std::vector<std::string>>(sj, root, "tests", {"ForwardStop", "SeqStep", "HingeExp"});
      const json alpha_j = pick<json>(sj, root, "alpha", json(0.01));
      const std::vector<double> alphas = alpha_j.is_array() ? alpha_j.get<std::vector<double>>() : std::vector<double>{alpha_j.get<double>()};
      const double c = pick<double>(sj, root, "c", 2.0);
      if (sizes.empty() || tests.empty() || alphas.empty()) fail(ErrorKind::Validation, "empty sample_sizes, tests or alpha");
      for (double alpha : alphas)
        for (std::size_t n : sizes)
          for (const auto& t : tests) {
            ScenarioSpec s = base;
            s.sample_size = n;
            s.accumulation = {parse_accumulation_kind(t), c, alpha};
            s.validate();
            specs.push_back(s);
          }
    }
    return specs;
  } catch (const json::exception& e) {
    fail(ErrorKind::SchemaMismatch, std::string("scenario file: ") + e.what());
  }
}

int cmd_simulate(const Options& o) {
  if (o.scenarios.empty()) fail(ErrorKind::Validation, "--scenarios is required");
  for (const auto& f : o.formats)
    if (f != "json" && f != "text" && f != "csv") fail(ErrorKind::Validation, "unknown format '" + f + "'");
  if (o.replicates && *o.replicates == 0) fail(ErrorKind::Validation, "--replicates must be positive");
  const auto specs = parse_scenarios(o.scenarios, o);
  const auto table = scenario_table(specs);
  json rows = json::array();
  for (const auto& r : table.rows) {
    json rj{{"scenario", r.scenario}, {"true_threshold", r.true_threshold}, {"tail_weight", r.tail_weight},
            {"sample_size", r.sample_size}, {"test", test_json(r.test)}, {"successes", r.result.success_count()},
            {"failures", r.result.failure_count}};
    rj["head_weight"] = r.head_weight ? json(*r.head_weight) : json(nullptr);
    rj["mean"] = std::isfinite(r.result.mean_threshold) ? json(r.result.mean_threshold) : json(nullptr);
    rj["rmse"] = std::isfinite(r.result.rmse) ? json(r.result.rmse) : json(nullptr);
    rows.push_back(rj);
  }
  json doc{{"schema_version", kSchemaVersion}, {"command", "simulate"}, {"scenario_file", o.scenarios}, {"rows", rows}};
  Outputs out;
  out.add(o, "simulation.json", "json", json_text(doc));
  out.add(o, "simulation.txt", "text", scenario_table_text(table));
  out.add(o, "simulation.csv", "csv", scenario_table_csv(table));
  out.commit(o);
  return kOk;
}

void add_data_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-i,--input", o.input, "claims CSV (columns year, claim); relative paths fall back to $POTKIT_DATA_DIR");
  cmd->add_option("-y,--year", o.years, "year(s) to analyse; default all");
  cmd->add_option("--scale", o.scale, "divide raw claim sizes by this factor")->capture_default_str();
  cmd->add_option("--floor", o.floor, "drop claims below this size (scaled units)");
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-o,--out", o.out, "output directory; nothing is written when omitted");
  cmd->add_option("--format", o.formats, "json, text, csv")->capture_default_str();
}

void add_selection_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-t,--test", o.tests, "ForwardStop, SeqStep or HingeExp (repeatable)")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "accumulation test level")->capture_default_str();
  cmd->add_option("--c", o.c, "C for SeqStep and HingeExp")->capture_default_str();
  cmd->add_option("--grid-lower", o.grid_lower, "lowest candidate percentile")->capture_default_str();
  cmd->add_option("--grid-upper", o.grid_upper, "highest candidate percentile")->capture_default_str();
  cmd->add_option("--grid-count", o.grid_count, "number of candidate thresholds")->capture_default_str();
  cmd->add_option("--min-exceedances", o.min_exceedances, "minimum exceedances per candidate")->capture_default_str();
  cmd->add_option("--gof", o.gof, "p-value method: table or bootstrap")->capture_default_str();
  cmd->add_option("--bootstrap-replicates", o.bootstrap_replicates, "bootstrap replicates")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for bootstrap p-values")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peaks-over-threshold modelling of claims data"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
  app.require_subcommand(1);
  Options o;

  auto* summarize = app.add_subcommand("summarize", "per-year summary statistics");
  add_data_options(summarize, o);
  add_output_options(summarize, o);

  auto* select = app.add_subcommand("select", "automated threshold selection per year");
  add_data_options(select, o);
  add_output_options(select, o);
  add_selection_options(select, o);

  auto* var = app.add_subcommand("var", "GPD Value-at-Risk with delta-method confidence intervals");
  add_data_options(var, o);
  add_output_options(var, o);
  add_selection_options(var, o);
  var->add_option("-l,--level", o.levels, "VaR level(s)")->capture_default_str();
  var->add_option("--ci-level", o.ci_level, "confidence level")->capture_default_str();
  var->add_option("--threshold", o.threshold, "fit at this threshold instead of selecting one");

  auto* plot = app.add_subcommand("plot-cdf", "empirical vs fitted GPD CDFs as CSV and SVG");
  add_data_options(plot, o);
  add_output_options(plot, o);
  add_selection_options(plot, o);
  plot->add_option("--threshold", o.threshold, "also plot a fit at this threshold instead of selecting one");
  plot->add_option("--plot-points", o.plot_points, "x grid size")->capture_default_str();
  plot->add_option("--plot-upper", o.plot_upper, "right end of the x axis as an empirical quantile level")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo study over scenario specs");
  simulate->add_option("-s,--scenarios", o.scenarios, "scenario JSON file")->required();
  simulate->add_option("--replicates", o.replicates, "override replicates per scenario");
  simulate->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
  add_output_options(simulate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }
  try {
    if (summarize->parsed()) return cmd_summarize(o);
    if (select->parsed()) return cmd_select(o);
    if (var->parsed()) return cmd_var(o);
    if (plot->parsed()) return cmd_plot_cdf(o);
    if (simulate->parsed()) return cmd_simulate(o);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kValidation;
}
