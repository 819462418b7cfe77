#include <cmath>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "arp/errors.hpp"
#include "arp/gaussian_process.hpp"

namespace arp {
namespace {

// EI by composite Simpson quadrature of sd * (zb - z) phi(z) over z < zb.
double ei_quadrature(double mean, double sd, double best) {
  const double zb = (best - mean) / sd;
  const double lo = -40.0;
  if (zb <= lo) return 0.0;
  const int panels = 200000;
  const double h = (zb - lo) / panels;
  auto g = [&](double z) { return (zb - z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); };
  double s = g(lo) + g(zb);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * g(lo + k * h);
  return sd * s * h / 3.0;
}

SurrogateState random_state(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  SurrogateState s;
  const Permutation ref = sample_uniform(n, rng);
  while (static_cast<int>(s.evaluated.size()) < m) {
    Permutation p = sample_uniform(n, rng);
    bool dup = false;
    for (const auto& q : s.evaluated) dup = dup || q == p;
    if (dup) continue;
    s.f.push_back(100.0 + 3.0 * static_cast<double>(kendall_distance(p, ref)) + rng.uniform());
    s.evaluated.push_back(std::move(p));
  }
  return s;
}

TEST(ExpectedImprovement, AnalyticValues) {
  // z = 0: sd * phi(0).
  EXPECT_NEAR(expected_improvement(5.0, 2.0, 5.0), 2.0 / std::sqrt(2.0 * M_PI), 1e-15);
  EXPECT_DOUBLE_EQ(expected_improvement(3.0, 0.0, 5.0), 2.0);
  EXPECT_DOUBLE_EQ(expected_improvement(7.0, 0.0, 5.0), 0.0);
  EXPECT_GT(expected_improvement(7.0, 1.0, 5.0), 0.0);
  EXPECT_THROW(expected_improvement(1.0, -1.0, 0.0), DomainError);
}

TEST(ExpectedImprovement, MatchesQuadrature) {
  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const double mean = rng.uniform(-50.0, 50.0);
    const double sd = rng.uniform(0.01, 20.0);
    const double best = mean + rng.uniform(-4.0, 4.0) * sd;
    EXPECT_NEAR(expected_improvement(mean, sd, best), ei_quadrature(mean, sd, best), 1e-8)
        << mean << " " << sd << " " << best;
  }
}

TEST(ExpectedImprovement, Monotone) {
  EXPECT_LT(expected_improvement(10.0, 1.0, 5.0), expected_improvement(9.0, 1.0, 5.0));
  EXPECT_LT(expected_improvement(10.0, 1.0, 5.0), expected_improvement(10.0, 2.0, 5.0));
}

TEST(Gp, ThetaGrid) {
  const auto grid = kernel_theta_grid();
  ASSERT_EQ(grid.size(), 29u);
  EXPECT_DOUBLE_EQ(grid.front(), 1.0 / 64.0);
  EXPECT_DOUBLE_EQ(grid.back(), 256.0);
  EXPECT_DOUBLE_EQ(grid[12], 1.0);
}

TEST(Gp, InterpolatesTrainingData) {
  const SurrogateState s = random_state(10, 40, 32);
  const PermutationGp gp = gp_fit(s);
  EXPECT_DOUBLE_EQ(gp.nugget(), 1e-8);
  const auto pred = gp.predict(s.evaluated);
  for (std::size_t k = 0; k < s.f.size(); ++k) {
    EXPECT_NEAR(pred[k].mean, s.f[k], 1e-6);
    EXPECT_LT(pred[k].sd, 1e-2 * std::sqrt(gp.variance()));
  }
}

TEST(Gp, BatchMatchesSingle) {
  const SurrogateState s = random_state(8, 15, 33);
  const PermutationGp gp = gp_fit(s);
  Rng rng(1);
  std::vector<Permutation> points;
  for (int k = 0; k < 10; ++k) points.push_back(sample_uniform(8, rng));
  const auto batch = gp.predict(points);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const GpPrediction single = gp.predict(points[k]);
    EXPECT_NEAR(batch[k].mean, single.mean, 1e-9);
    EXPECT_NEAR(batch[k].sd, single.sd, 1e-9);
  }
}

TEST(Gp, RevertsToPriorWhenUncorrelated) {
  SurrogateState s = random_state(8, 12, 34);
  s.kernel_theta = 256.0;  // correlation at distance 1 is e^{-256/28}
  const PermutationGp gp = gp_fit(s, {.fit_theta = false});
  Rng rng(99);
  for (int k = 0; k < 20; ++k) {
    const Permutation p = sample_uniform(8, rng);
    std::int64_t dmin = INT64_MAX;
    for (const auto& q : s.evaluated) dmin = std::min(dmin, kendall_distance(p, q));
    if (dmin < 3) continue;
    const GpPrediction pred = gp.predict(p);
    EXPECT_NEAR(pred.mean, gp.mean(), 1e-6 * std::abs(gp.mean()));
    EXPECT_NEAR(pred.sd, std::sqrt(gp.variance()), 1e-6 * std::sqrt(gp.variance()));
  }
}

// Five training points solved independently with a full-pivot LU.
TEST(Gp, FivePointHandSolve) {
  const std::vector<Permutation> x{Permutation({0, 1, 2, 3}), Permutation({1, 0, 2, 3}),
                                   Permutation({3, 2, 1, 0}), Permutation({0, 2, 1, 3}),
                                   Permutation({2, 3, 0, 1})};
  const std::vector<double> y{4.0, 5.5, 9.0, 4.5, 7.0};
  const double theta = 2.0;
  SurrogateState s{x, y, theta, 1e-8};
  const PermutationGp gp = gp_fit(s, {.fit_theta = false});

  auto k = [&](const Permutation& a, const Permutation& b) {
    return std::exp(-theta * static_cast<double>(kendall_distance(a, b)) / 6.0);
  };
  Eigen::MatrixXd R(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) R(i, j) = k(x[i], x[j]) + (i == j ? 1e-8 : 0.0);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
  const Eigen::VectorXd Y = Eigen::Map<const Eigen::VectorXd>(y.data(), 5);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(5);
  const double mu = one.dot(lu.solve(Y)) / one.dot(lu.solve(one));
  const Eigen::VectorXd res = Y - mu * one;
  const double sigma2 = res.dot(lu.solve(res)) / 5.0;
  EXPECT_NEAR(gp.mean(), mu, 1e-9);
  EXPECT_NEAR(gp.variance(), sigma2, 1e-9 * sigma2);

  const Permutation q({1, 2, 3, 0});
  Eigen::VectorXd r(5);
  for (int i = 0; i < 5; ++i) r(i) = k(x[i], q);
  const double mean = mu + r.dot(lu.solve(res));
  const double var = sigma2 * (1.0 + 1e-8 - r.dot(lu.solve(r)));
  const GpPrediction pred = gp.predict(q);
  EXPECT_NEAR(pred.mean, mean, 1e-9);
  EXPECT_NEAR(pred.sd, std::sqrt(var), 1e-9);
}

TEST(Gp, LikelihoodPicksBestGridTheta) {
  const SurrogateState s = random_state(7, 20, 35);
  const PermutationGp fitted = gp_fit(s);
  for (double theta : kernel_theta_grid()) {
    SurrogateState fixed = s;
    fixed.kernel_theta = theta;
    const PermutationGp other = gp_fit(fixed, {.fit_theta = false});
    EXPECT_LE(other.log_likelihood(), fitted.log_likelihood() + 1e-12);
  }
}

TEST(Gp, RejectsDegenerateInput) {
  SurrogateState s;
  s.evaluated = {Permutation::identity(3), Permutation::identity(3)};
  s.f = {1.0, 2.0};
  EXPECT_THROW(gp_fit(s), DomainError);
  s.evaluated = {Permutation::identity(3)};
  s.f = {1.0};
  EXPECT_THROW(gp_fit(s), DomainError);
  s.evaluated = {Permutation::identity(3), Permutation({2, 1, 0})};
  s.f = {1.0, NAN};
  EXPECT_THROW(gp_fit(s), DomainError);
}

}  // namespace
}  // namespace arp
