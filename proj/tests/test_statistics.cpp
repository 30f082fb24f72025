#include "collatz/statistics.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>

#include <cmath>
#include <random>

using namespace collatz::stats;

TEST(NormalCdf, KnownValues) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(normal_cdf(-1.0), 0.15865525393145707, 1e-14);
}

TEST(Moments, SmallSample) {
  const auto m = moments(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.variance, 5.0 / 3.0, 1e-14);
  EXPECT_EQ(m.n, 4u);
}

TEST(KsDistance, SingletonAndNormalSample) {
  EXPECT_NEAR(ks_distance_normal({0.0}), 0.5, 1e-15);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::vector<double> xs(200000);
  for (auto& x : xs) x = z(rng);
  EXPECT_LT(ks_distance_normal(xs), 0.005);
  for (auto& x : xs) x += 0.5;
  EXPECT_GT(ks_distance_normal(xs), 0.15);
}

TEST(Correlation, Basics) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  EXPECT_NEAR(correlation(a, b), 1.0, 1e-14);
  EXPECT_NEAR(covariance(a, b), 5.0, 1e-14);
  EXPECT_THROW(covariance(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(ClopperPearson, UpperBound) {
  // Zero successes: 1 - 0.05^{1/n}.
  EXPECT_NEAR(clopper_pearson_upper(0, 100000, 0.95), 1 - std::pow(0.05, 1e-5), 1e-12);
  // The bound p solves P(X <= x; n, p) = 0.05.
  const double p = clopper_pearson_upper(37, 5000, 0.95);
  boost::math::binomial_distribution<double> dist(5000, p);
  EXPECT_NEAR(boost::math::cdf(dist, 37.0), 0.05, 1e-9);
  EXPECT_DOUBLE_EQ(clopper_pearson_upper(10, 10, 0.95), 1.0);
}
