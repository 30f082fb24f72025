#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace collatz::stats {

double normal_cdf(double x);

struct Moments {
  double mean = 0;
  double variance = 0;  // unbiased
  std::uint64_t n = 0;
};

Moments moments(std::span<const double> xs);

/// Kolmogorov-Smirnov distance between the empirical law of xs and N(0, 1).
/// Sorts a copy; ties are handled exactly.
double ks_distance_normal(std::vector<double> xs);

double covariance(std::span<const double> a, std::span<const double> b);
double correlation(std::span<const double> a, std::span<const double> b);

/// One-sided Clopper-Pearson upper confidence bound for a binomial proportion.
double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials, double confidence);

}  // namespace collatz::stats
