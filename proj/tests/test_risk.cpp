#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "potkit/risk.hpp"

using namespace potkit;

namespace {

GpdFit fit_from(GpdParams params, std::size_t n) {
  GpdFit fit;
  fit.params = params;
  fit.n_exceedances = n;
  fit.theta_hat = params.gamma / params.sigma;
  fit.mle_regularity_ok = params.gamma > -0.5;
  return fit;
}

}  // namespace

TEST(Covariance, UnitExample) {
  const auto cov = mle_covariance({0.0, 1.0, 0.0}, 1);
  EXPECT_DOUBLE_EQ(cov.matrix[0][0], 2.0);
  EXPECT_DOUBLE_EQ(cov.matrix[0][1], -1.0);
  EXPECT_DOUBLE_EQ(cov.matrix[1][0], -1.0);
  EXPECT_DOUBLE_EQ(cov.matrix[1][1], 1.0);
}

TEST(Covariance, ScalesInverselyWithN) {
  const GpdParams p{0.0, 1.7, 0.4};
  const auto a = mle_covariance(p, 100);
  const auto b = mle_covariance(p, 200);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(b.matrix[i][j], a.matrix[i][j] / 2.0, 1e-15);
  const double det = a.matrix[0][0] * a.matrix[1][1] - a.matrix[0][1] * a.matrix[1][0];
  EXPECT_GE(det, -1e-12);
}

TEST(Covariance, RegularityViolation) {
  try {
    mle_covariance({0.0, 1.0, -0.6}, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RegularityViolation);
  }
  EXPECT_THROW(mle_covariance(fit_from({0.0, 1.0, -0.5}, 100)), Error);
}

TEST(Covariance, MatchesMonteCarloSpread) {
  const GpdParams truth{0.0, 1.0, 0.3};
  const std::size_t n = 2000;
  const int reps = 2000;
  double ms = 0, mg = 0, ss = 0, sg = 0, gg = 0;
  for (int r = 0; r < reps; ++r) {
    const auto fit = fit_gpd(ExceedanceSet::from_exceedances(gpd_sample(truth, n, 7000 + r)));
    ms += fit.params.sigma;
    mg += fit.params.gamma;
    ss += fit.params.sigma * fit.params.sigma;
    sg += fit.params.sigma * fit.params.gamma;
    gg += fit.params.gamma * fit.params.gamma;
  }
  ms /= reps;
  mg /= reps;
  const double v_ss = ss / reps - ms * ms;
  const double v_sg = sg / reps - ms * mg;
  const double v_gg = gg / reps - mg * mg;
  const auto cov = mle_covariance(truth, n);
  EXPECT_NEAR(v_ss / cov.matrix[0][0], 1.0, 0.15);
  EXPECT_NEAR(v_gg / cov.matrix[1][1], 1.0, 0.15);
  EXPECT_NEAR(v_sg / cov.matrix[0][1], 1.0, 0.15);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> sig(0.2, 5.0), gam(-0.45, 2.0), lev(0.5, 0.995);
  for (int i = 0; i < 20; ++i) {
    const GpdParams p{0.3, sig(rng), gam(rng)};
    const double level = lev(rng);
    const auto g = var_gradient(p, level);
    const double hs = 1e-6 * p.sigma;
    const double hg = 1e-6;
    const double fs = (gpd_quantile(level, {p.mu, p.sigma + hs, p.gamma}) - gpd_quantile(level, {p.mu, p.sigma - hs, p.gamma})) / (2 * hs);
    const double fg = (gpd_quantile(level, {p.mu, p.sigma, p.gamma + hg}) - gpd_quantile(level, {p.mu, p.sigma, p.gamma - hg})) / (2 * hg);
    EXPECT_LT(std::abs(g[0] - fs) / std::abs(fs), 1e-6) << i;
    EXPECT_LT(std::abs(g[1] - fg) / std::abs(fg), 1e-6) << i;
  }
}

TEST(Gradient, ClosedForms) {
  EXPECT_NEAR(var_gradient({0.0, 3.3, 1.0}, 0.5)[0], 1.0, 1e-14);
  const double l = std::log1p(-0.9);
  const auto g0 = var_gradient({0.0, 2.0, 0.0}, 0.9);
  EXPECT_NEAR(g0[0], -l, 1e-14);
  EXPECT_NEAR(g0[1], 2.0 / 2.0 * l * l, 1e-13);
  const auto tiny = var_gradient({0.0, 1.0, 1e-6}, 1e-12);
  EXPECT_LT(std::abs(tiny[0]), 1e-11);
  EXPECT_LT(std::abs(tiny[1]), 1e-11);
}

TEST(Gradient, ContinuousThroughZeroShape) {
  for (double level : {0.1, 0.9, 0.999}) {
    const auto at = var_gradient({0.0, 1.0, 0.0}, level);
    for (double g : {1e-9, -1e-9, 1e-7, -1e-7}) {
      const auto near = var_gradient({0.0, 1.0, g}, level);
      EXPECT_NEAR(near[0], at[0], 1e-6 * std::abs(at[0]));
      EXPECT_NEAR(near[1], at[1], 1e-5 * std::abs(at[1]));
    }
  }
}

TEST(Gradient, DomainErrors) {
  EXPECT_THROW(var_gradient({0.0, 1.0, 0.5}, 0.0), Error);
  EXPECT_THROW(var_gradient({0.0, 1.0, 0.5}, 1.0), Error);
}

TEST(VarWithCi, ReproducesPublishedPoints) {
  const auto fit = fit_from({0.541, 0.558, 0.769}, 100);
  EXPECT_NEAR(var_with_ci(fit, 0.90).var, 4.07, 0.01);
  EXPECT_NEAR(var_with_ci(fit, 0.95).var, 7.08, 0.01);
}

TEST(VarWithCi, SymmetricIntervalOfExpectedWidth) {
  const auto fit = fit_from({1.0, 2.0, 0.3}, 250);
  const auto est = var_with_ci(fit, 0.95, 0.90);
  EXPECT_EQ(est.var, gpd_quantile(0.95, fit.params));
  EXPECT_NEAR(est.var - est.ci_lower, est.ci_upper - est.var, 1e-9);
  EXPECT_NEAR(est.ci_upper - est.ci_lower, 2.0 * 1.6448536269514722 * est.omega, 1e-9);
  EXPECT_GT(est.omega, 0.0);
  EXPECT_TRUE(est.covers(est.var));
  EXPECT_EQ(est.n, 250u);
}

TEST(VarWithCi, OmegaIsQuadraticForm) {
  const auto fit = fit_from({0.0, 1.3, 0.6}, 400);
  const auto g = var_gradient(fit.params, 0.9);
  const auto c = mle_covariance(fit.params, 400).matrix;
  const double w2 = g[0] * (c[0][0] * g[0] + c[0][1] * g[1]) + g[1] * (c[1][0] * g[0] + c[1][1] * g[1]);
  EXPECT_NEAR(var_with_ci(fit, 0.9).omega, std::sqrt(w2), 1e-12);
}

TEST(VarWithCi, TranslationEquivariance) {
  const auto a = var_with_ci(fit_from({0.0, 1.0, 0.5}, 300), 0.95);
  const auto b = var_with_ci(fit_from({7.5, 1.0, 0.5}, 300), 0.95);
  EXPECT_NEAR(b.var - a.var, 7.5, 1e-12);
  EXPECT_NEAR(b.ci_lower - a.ci_lower, 7.5, 1e-12);
  EXPECT_NEAR(b.ci_upper - a.ci_upper, 7.5, 1e-12);
  EXPECT_EQ(a.omega, b.omega);
}

TEST(VarWithCi, MonotoneInLevel) {
  const auto fit = fit_from({0.0, 1.0, 0.2}, 300);
  double prev = -1.0;
  for (double level = 0.01; level < 1.0; level += 0.01) {
    const double v = var_with_ci(fit, level).var;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(VarWithCi, Errors) {
  const auto fit = fit_from({0.0, 1.0, 0.2}, 300);
  EXPECT_THROW(var_with_ci(fit, 1.0), Error);
  EXPECT_THROW(var_with_ci(fit, 0.9, 1.0), Error);
  EXPECT_THROW(var_with_ci(fit_from({0.0, 1.0, -0.7}, 300), 0.9), Error);
}

TEST(VarWithCi, UnconditionalLevelOption) {
  const auto fit = fit_from({0.0, 1.0, 0.2}, 300);
  VarOptions opts;
  opts.exceedance_fraction = 0.2;
  EXPECT_NEAR(var_with_ci(fit, 0.98, 0.95, opts).var, gpd_quantile(0.9, fit.params), 1e-12);
  EXPECT_THROW(var_with_ci(fit, 0.5, 0.95, opts), Error);
}

TEST(VarWithCi, CoverageNearNominal) {
  const GpdParams truth{0.0, 1.0, 0.5};
  const double target = gpd_quantile(0.95, truth);
  int covered = 0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    const auto fit = fit_gpd(ExceedanceSet::from_exceedances(gpd_sample(truth, 2000, 300000 + r)));
    if (var_with_ci(fit, 0.95).covers(target)) ++covered;
  }
  // three binomial standard errors around 0.95 at 400 replicates
  EXPECT_NEAR(static_cast<double>(covered) / reps, 0.95, 0.033);
}

TEST(EmpiricalVar, Examples) {
  EXPECT_EQ(empirical_var(std::vector<double>{1, 2, 3}, 0.5), 2.0);
  EXPECT_EQ(empirical_var(std::vector<double>{0, 10}, 0.25), 2.5);
  EXPECT_EQ(empirical_var(std::vector<double>{10, 0}, 0.25), 2.5);
  EXPECT_THROW(empirical_var(std::vector<double>{}, 0.5), Error);
  EXPECT_THROW(empirical_var(std::vector<double>{1.0}, 1.0), Error);
}

TEST(NormalQuantile, AccurateToTightTolerance) {
  EXPECT_NEAR(normal::quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal::quantile(0.5), 0.0, 1e-15);
  for (double p = 1e-6; p < 1.0; p *= 3.7) EXPECT_NEAR(normal::cdf(normal::quantile(p)), p, 1e-9 * std::max(p, 1e-3));
}
