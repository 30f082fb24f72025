#pragma once

// Sampling from the symbol measure and from real trajectories.

#include "collatz/structure.hpp"
#include "collatz/types.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace collatz {

/// The engine for sample `index` under master `seed`. Every sample owns its
/// stream, so results do not depend on how samples are spread over workers.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Fair bits drawn LSB-first from 64-bit engine outputs. A geometric(1/2)
/// symbol is 1 + the number of zero bits before the next one bit, so there is
/// no upper cap on k.
class RandomBits {
 public:
  explicit RandomBits(std::mt19937_64& engine) : engine_(&engine) {}

  bool next_bit();
  unsigned long geometric();
  /// Sum of `count` geometric symbols; consumes exactly the bits that
  /// `count` calls of geometric() would.
  std::uint64_t geometric_sum(std::uint64_t count);

 private:
  void refill();

  std::mt19937_64* engine_;
  std::uint64_t word_ = 0;
  unsigned avail_ = 0;
};

/// eps from one fair bit, then k_1..k_m i.i.d. geometric(1/2).
SymbolSequence sample_sequence(std::size_t m, RandomBits& bits);

struct SampleConfig {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned x_bits = 0;   // trajectory mode only
  unsigned workers = 0;  // 0 = hardware concurrency
};

inline constexpr double kSymbolBudget = 1e11;      // m n
inline constexpr double kTrajectoryBudget = 1e10;  // m n x_bits / 64

struct CltReport {
  double sample_mean = 0;
  double sample_variance = 0;
  double ks_distance = 0;
  double sigma_used = 2;  // variance of a geometric(1/2) symbol
  SampleConfig config;
};

/// (K - 2m) / sqrt(2m) over n sampled words of length m.
CltReport clt_sample(const SampleConfig& config);

struct DriftReport {
  double mean_z_over_m = 0;
  double stderr_z = 0;
  double mean_k_over_m = 0;  // from the same orbits
  double stderr_k = 0;
  std::uint64_t fixed_point_hits = 0;
  SampleConfig config;
};

/// Uniform odd x_bits-bit integer coprime to 3 (top bit set), resampling
/// multiples of 3.
BigInt random_pi_element(std::mt19937_64& engine, unsigned x_bits);

/// z_m / m along real orbits of random starting points. Requires
/// x_bits >= 2m + 64 (std::invalid_argument otherwise).
DriftReport trajectory_drift(const SampleConfig& config);

struct SymbolDriftReport {
  double mean_k_over_m = 0;
  double stderr_k = 0;
  SampleConfig config;
};

/// K / m for words drawn from the symbol measure (the symbol-level twin of
/// trajectory_drift).
SymbolDriftReport symbol_drift(const SampleConfig& config);

struct WienerReport {
  std::uint64_t M = 0;
  std::vector<double> times;
  std::vector<std::uint64_t> steps;  // times * M
  std::vector<double> means;
  std::vector<std::vector<double>> covariance;
  std::vector<std::vector<double>> expected;  // sigma min(tau_i, tau_j)
  double sigma = 0;                           // 2 (ln 2)^2
  double max_relative_deviation = 0;
  double max_increment_correlation = 0;  // over disjoint windows
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

/// omega(m / M) = (2m - K_m) ln 2 / sqrt(M) at the requested times, over n
/// symbol-level paths. times must be increasing multiples of 1/M in (0, 1].
WienerReport wiener_fdd(std::uint64_t M, const std::vector<double>& times, std::uint64_t n, std::uint64_t seed,
                        unsigned workers = 0);

struct ThetaConcentration {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  double gamma0 = 1;
  double threshold = 0;  // m^gamma0
  std::uint64_t exceedances = 0;
  double estimate = 0;
  double upper95 = 0;  // one-sided Clopper-Pearson
  std::uint64_t seed = 0;
};

/// Empirical P{|theta_m| > m^gamma0} under the symbol measure. Requires m >= 2.
ThetaConcentration theta_concentration(std::uint64_t m, std::uint64_t n, double gamma0, std::uint64_t seed,
                                       unsigned workers = 0);

}  // namespace collatz
