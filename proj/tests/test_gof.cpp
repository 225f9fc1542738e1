#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "potkit/gof.hpp"

using namespace potkit;

TEST(Pit, SupportStartMapsToZero) {
  const std::vector<double> x{1.5};
  EXPECT_EQ(probability_integral_transform(x, {1.5, 2.0, 0.3}).front(), 0.0);
}

TEST(Pit, InvertsQuantiles) {
  const GpdParams params{0.0, 1.0, 0.6};
  std::vector<double> x;
  for (double p : {0.9, 0.1, 0.5}) x.push_back(gpd_quantile(p, params));
  const auto z = probability_integral_transform(x, params);
  EXPECT_NEAR(z[0], 0.1, 1e-10);
  EXPECT_NEAR(z[1], 0.5, 1e-10);
  EXPECT_NEAR(z[2], 0.9, 1e-10);
}

TEST(Pit, UniformOnOwnModel) {
  const GpdParams params{2.0, 0.8, 0.8};
  const auto z = probability_integral_transform(gpd_sample(params, 10000, 31), params);
  EXPECT_TRUE(std::is_sorted(z.begin(), z.end()));
  EXPECT_LT(oracle::ks_distance(z, [](double u) { return std::clamp(u, 0.0, 1.0); }), 0.02);
}

TEST(Pit, OutsideSupportThrows) {
  const std::vector<double> x{0.5, -0.1};
  EXPECT_THROW(probability_integral_transform(x, {0.0, 1.0, 0.2}), Error);
}

TEST(AdStatistic, SinglePoint) {
  const std::vector<double> z{0.5};
  EXPECT_NEAR(ad_statistic(z), 2.0 * std::log(2.0) - 1.0, 1e-15);
}

TEST(AdStatistic, MatchesExtendedPrecisionSum) {
  std::vector<double> z(100);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (static_cast<double>(i) + 0.5) / 100.0;
  EXPECT_NEAR(ad_statistic(z), static_cast<double>(oracle::ad_statistic(z)), 1e-12);
}

TEST(AdStatistic, SymmetricUnderReflection) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> z(37);
    for (double& v : z) v = u(rng);
    std::sort(z.begin(), z.end());
    std::vector<double> r;
    for (double v : z) r.push_back(1.0 - v);
    std::sort(r.begin(), r.end());
    EXPECT_NEAR(ad_statistic(z), ad_statistic(r), 1e-11);
  }
}

TEST(AdStatistic, BoundaryValuesAreClamped) {
  const std::vector<double> z{0.0, 0.5, 1.0};
  EXPECT_TRUE(std::isfinite(ad_statistic(z)));
}

TEST(AdStatistic, Errors) {
  EXPECT_THROW(ad_statistic(std::vector<double>{}), Error);
  EXPECT_THROW(ad_statistic(std::vector<double>{0.6, 0.2}), Error);
}

TEST(AdStatistic, AffineInvariance) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto raw = gpd_sample({0.0, 1.0, 0.4}, 200, seed);
    const auto fit = fit_gpd(ExceedanceSet::from_exceedances(raw));
    for (double c : {1e-3, 0.37, 12.0, 5e4}) {
      std::vector<double> scaled(raw);
      for (double& v : scaled) v *= c;
      const double a = ad_statistic(probability_integral_transform(raw, {0.0, fit.params.sigma, fit.params.gamma}));
      const double b = ad_statistic(probability_integral_transform(scaled, {0.0, c * fit.params.sigma, fit.params.gamma}));
      EXPECT_NEAR(a, b, 1e-9) << seed << ' ' << c;
    }
  }
}

TEST(AdStatistic, EndToEndScaleInvariance) {
  const auto raw = gpd_sample({1.0, 1.0, 0.4}, 300, 77);
  std::vector<double> scaled(raw);
  for (double& v : scaled) v *= 250.0;
  const auto a = gof_test(raw, 1.0);
  const auto b = gof_test(scaled, 250.0);
  EXPECT_NEAR(a.statistic, b.statistic, 1e-6);
  EXPECT_NEAR(a.p_value, b.p_value, 1e-6);
}

TEST(AdTable, EmbeddedTableIsWellFormed) {
  const auto& table = embedded_ad_table();
  EXPECT_GE(table.shapes().size(), 30u);
  EXPECT_LE(table.shapes().front(), -0.5 + 1e-9);
  EXPECT_GE(table.shapes().back(), 3.0 - 1e-9);
  EXPECT_NEAR(table.p_min(), 0.001, 1e-12);
  EXPECT_TRUE(table.covers(0.0));
  EXPECT_FALSE(table.covers(-0.9));
  EXPECT_FALSE(table.covers(3.5));
}

TEST(AdTable, ShippedDataFileMatchesEmbeddedCopy) {
  std::ifstream in(std::string(POTKIT_SOURCE_DIR) + "/data/ad_critical_values.txt");
  ASSERT_TRUE(in.good());
  const auto file = AdTable::parse(in);
  const auto& embedded = embedded_ad_table();
  EXPECT_EQ(file.levels(), embedded.levels());
  EXPECT_EQ(file.shapes(), embedded.shapes());
  EXPECT_EQ(file.critical_values(), embedded.critical_values());
}

TEST(AdTable, ZeroStatisticGivesUpperClamp) {
  const auto& table = embedded_ad_table();
  for (double shape : {-0.5, 0.0, 0.77, 3.0}) EXPECT_EQ(ad_pvalue(0.0, shape, 100, PValueMethod::TableInterpolation), table.p_max());
}

TEST(AdTable, PValueNonincreasingInStatistic) {
  const auto& table = embedded_ad_table();
  for (double shape : {-0.45, 0.0, 0.33, 1.0, 2.71}) {
    double prev = 2.0;
    for (double a2 = 0.0; a2 < 8.0; a2 += 0.01) {
      const double p = table.pvalue(a2, shape);
      EXPECT_LE(p, prev);
      EXPECT_GE(p, table.p_min());
      EXPECT_LE(p, table.p_max());
      prev = p;
    }
  }
}

TEST(AdTable, InterpolatesExactlyAtNodes) {
  const auto& table = embedded_ad_table();
  const auto& row = table.critical_values()[5];
  for (std::size_t j = 0; j < row.size(); ++j) EXPECT_NEAR(table.pvalue(row[j], table.shapes()[5]), table.levels()[j], 1e-12);
}

TEST(AdTable, OffTableShapeThrows) {
  try {
    ad_pvalue(1.0, 4.0, 100, PValueMethod::TableInterpolation);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedShape);
  }
}

TEST(AdTable, ParseRejectsBadInput) {
  EXPECT_THROW(AdTable::parse(std::string("levels 0.5 0.1\n")), Error);
  EXPECT_THROW(AdTable::parse(std::string("potkit-ad-table 2\n")), Error);
  EXPECT_THROW(AdTable::parse(std::string("potkit-ad-table 1\nlevels 0.5 0.1\nshape 0 1 2\nshape 1 2\n")), Error);
  EXPECT_NO_THROW(AdTable::parse(std::string("potkit-ad-table 1\nlevels 0.5 0.1 # c\nshape 0 1 2\nshape 1 1.5 3\n")));
}

TEST(Bootstrap, DeterministicPerSeedAndBounded) {
  BootstrapOptions opts;
  opts.replicates = 49;
  opts.seed = 9;
  const double a = bootstrap_pvalue(0.5, 0.3, 60, opts);
  EXPECT_EQ(a, bootstrap_pvalue(0.5, 0.3, 60, opts));
  EXPECT_GE(a, 1.0 / 50.0);
  EXPECT_LE(a, 1.0);
  EXPECT_EQ(bootstrap_pvalue(0.0, 0.3, 60, opts), 1.0);
  EXPECT_NEAR(bootstrap_pvalue(1e6, 0.3, 60, opts), 1.0 / 50.0, 1e-12);
}

TEST(Bootstrap, NullCalibration) {
  double total = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto data = gpd_sample({0.0, 1.0, 0.3}, 60, 1000 + r);
    GofOptions opts;
    opts.method = PValueMethod::ParametricBootstrap;
    opts.bootstrap.replicates = 99;
    opts.bootstrap.seed = 5000 + r;
    total += gof_test(data, 0.0, opts).p_value;
  }
  EXPECT_NEAR(total / reps, 0.5, 0.05);
}

TEST(Bootstrap, AgreesWithTableInsideRange) {
  const auto& table = embedded_ad_table();
  for (double shape : {0.0, 0.5, 1.5}) {
    const auto it = std::lower_bound(table.shapes().begin(), table.shapes().end(), shape - 1e-9);
    const auto& row = table.critical_values()[static_cast<std::size_t>(it - table.shapes().begin())];
    for (double stat : {row[row.size() / 2], row[row.size() * 3 / 4]}) {
      BootstrapOptions opts;
      opts.replicates = 999;
      opts.seed = 17;
      const double boot = bootstrap_pvalue(stat, shape, 400, opts);
      EXPECT_NEAR(boot, table.pvalue(stat, shape), 0.05) << shape << ' ' << stat;
    }
  }
}

TEST(GofTest, SizeAtNominalFivePercent) {
  int rejections = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    const auto data = gpd_sample({0.5, 1.0, 1.0}, 200, 20000 + r);
    if (gof_test(data, 0.5).p_value < 0.05) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / reps;
  EXPECT_GE(rate, 0.02);
  EXPECT_LE(rate, 0.09);
}

TEST(GofTest, PowerAgainstLognormalBody) {
  int rejections = 0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    std::mt19937_64 rng(40000 + r);
    std::lognormal_distribution<double> body(0.0, 1.0);
    std::vector<double> data(500);
    for (double& v : data) v = body(rng);
    if (gof_test(data, 0.0).p_value < 0.05) ++rejections;
  }
  EXPECT_GT(rejections, reps / 2);
}

TEST(GofTest, HigherThresholdDoesNotInflateStatistic) {
  double low = 0.0;
  double high = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto data = gpd_sample({0.0, 1.0, 0.5}, 500, 60000 + r);
    low += gof_test(data, 0.0).statistic;
    high += gof_test(data, 1.0).statistic;
  }
  // both are null-distributed; means near 0.6 with sd around 0.03 each
  EXPECT_LT(high / reps, low / reps + 0.15);
}

TEST(GofTest, FallsBackToBootstrapOffTable) {
  const auto data = gpd_sample({0.0, 1.0, 6.0}, 150, 3);
  GofOptions opts;
  opts.bootstrap.replicates = 19;
  const auto out = gof_test_detailed(data, 0.0, opts);
  ASSERT_FALSE(embedded_ad_table().covers(out.fit.params.gamma));
  EXPECT_TRUE(out.used_fallback);
  EXPECT_EQ(out.ad.method, PValueMethod::ParametricBootstrap);
  opts.bootstrap_fallback = false;
  EXPECT_THROW(gof_test(data, 0.0, opts), Error);
}

TEST(GofTest, ResultFields) {
  const auto data = gpd_sample({0.0, 1.0, 0.2}, 300, 8);
  const auto r = gof_test(data, 0.0);
  EXPECT_EQ(r.n, 300u);
  EXPECT_GE(r.statistic, -1e-9);
  EXPECT_EQ(r.method, PValueMethod::TableInterpolation);
  EXPECT_EQ(to_string(r.method), "table-interpolation");
}
