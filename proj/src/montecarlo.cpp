#include "collatz/montecarlo.hpp"

#include "collatz/core_map.hpp"
#include "collatz/parallel.hpp"
#include "collatz/statistics.hpp"
#include "collatz/walk.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace collatz {

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void RandomBits::refill() {
  word_ = (*engine_)();
  avail_ = 64;
}

bool RandomBits::next_bit() {
  if (avail_ == 0) refill();
  const bool bit = word_ & 1u;
  word_ >>= 1;
  --avail_;
  return bit;
}

unsigned long RandomBits::geometric() {
  unsigned long k = 1;
  for (;;) {
    if (avail_ == 0) refill();
    if (word_ == 0) {  // every remaining bit is zero
      k += avail_;
      avail_ = 0;
      continue;
    }
    const auto tz = static_cast<unsigned>(std::countr_zero(word_));
    k += tz;
    const unsigned used = tz + 1;
    word_ = used == 64 ? 0 : word_ >> used;
    avail_ -= used;
    return k;
  }
}

std::uint64_t RandomBits::geometric_sum(std::uint64_t count) {
  std::uint64_t total = 0;
  while (count > 0) {
    if (avail_ == 0) refill();
    const auto ones = static_cast<std::uint64_t>(std::popcount(word_));
    if (ones < count) {
      total += avail_;
      count -= ones;
      avail_ = 0;
      word_ = 0;
      continue;
    }
    std::uint64_t w = word_;
    for (std::uint64_t i = 1; i < count; ++i) w &= w - 1;  // drop the lowest count-1 ones
    const unsigned used = static_cast<unsigned>(std::countr_zero(w)) + 1;
    total += used;
    word_ = used == 64 ? 0 : word_ >> used;
    avail_ -= used;
    count = 0;
  }
  return total;
}

SymbolSequence sample_sequence(std::size_t m, RandomBits& bits) {
  if (m == 0) throw std::invalid_argument("sampled words need m >= 1");
  const Sign eps = bits.next_bit() ? Sign::plus : Sign::minus;
  std::vector<unsigned long> ks(m);
  for (auto& k : ks) k = bits.geometric();
  return SymbolSequence(std::move(ks), eps);
}

namespace {

void check_symbol_budget(const SampleConfig& c) {
  if (c.m == 0 || c.n < 2) throw std::invalid_argument("sampling needs m >= 1 and n >= 2");
  if (static_cast<double>(c.m) * static_cast<double>(c.n) > kSymbolBudget) {
    throw BudgetExceeded("m * n exceeds the symbol sampling budget");
  }
}

}  // namespace

CltReport clt_sample(const SampleConfig& config) {
  check_symbol_budget(config);
  std::vector<double> values(config.n);
  const double two_m = 2.0 * static_cast<double>(config.m);
  const double scale = std::sqrt(two_m);
  parallel_for(config.n, config.workers, [&](std::size_t i) {
    auto engine = sample_stream(config.seed, i);
    RandomBits bits(engine);
    const auto K = bits.geometric_sum(config.m);
    values[i] = (static_cast<double>(K) - two_m) / scale;
  });
  const auto mo = stats::moments(values);
  CltReport rep;
  rep.sample_mean = mo.mean;
  rep.sample_variance = mo.variance;
  rep.ks_distance = stats::ks_distance_normal(std::move(values));
  rep.config = config;
  return rep;
}

BigInt random_pi_element(std::mt19937_64& engine, unsigned x_bits) {
  if (x_bits < 3) throw std::invalid_argument("x_bits must be at least 3");
  const std::size_t words = (x_bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  BigInt x;
  do {
    for (auto& w : buf) w = engine();
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), x_bits);
    mpz_setbit(x.get_mpz_t(), x_bits - 1);
    mpz_setbit(x.get_mpz_t(), 0);
  } while (mpz_divisible_ui_p(x.get_mpz_t(), 3));
  return x;
}

DriftReport trajectory_drift(const SampleConfig& config) {
  if (config.m == 0 || config.n < 2) throw std::invalid_argument("drift needs m >= 1 and n >= 2");
  if (config.x_bits < 2 * config.m + 64) throw std::invalid_argument("drift needs x_bits >= 2m + 64");
  if (static_cast<double>(config.m) * static_cast<double>(config.n) * config.x_bits / 64.0 > kTrajectoryBudget) {
    throw BudgetExceeded("m * n * x_bits exceeds the trajectory budget");
  }
  std::vector<double> z(config.n), kbar(config.n);
  std::vector<unsigned char> hit(config.n, 0);
  const double m = static_cast<double>(config.m);
  parallel_for(config.n, config.workers, [&](std::size_t i) {
    auto engine = sample_stream(config.seed, i);
    const BigInt x0 = random_pi_element(engine, config.x_bits);
    BigInt x = x0;
    std::uint64_t K = 0;
    for (std::uint64_t j = 0; j < config.m; ++j) {
      x = 3 * x + 1;
      const auto k = mpz_scan1(x.get_mpz_t(), 0);
      mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), k);
      K += k;
      if (x == 1) hit[i] = 1;
    }
    z[i] = (log_big(x) - log_big(x0)) / m;
    kbar[i] = static_cast<double>(K) / m;
  });
  const auto mz = stats::moments(z);
  const auto mk = stats::moments(kbar);
  DriftReport rep;
  const double n = static_cast<double>(config.n);
  rep.mean_z_over_m = mz.mean;
  rep.stderr_z = std::sqrt(mz.variance / n);
  rep.mean_k_over_m = mk.mean;
  rep.stderr_k = std::sqrt(mk.variance / n);
  for (auto h : hit) rep.fixed_point_hits += h;
  rep.config = config;
  return rep;
}

SymbolDriftReport symbol_drift(const SampleConfig& config) {
  check_symbol_budget(config);
  std::vector<double> kbar(config.n);
  const double m = static_cast<double>(config.m);
  parallel_for(config.n, config.workers, [&](std::size_t i) {
    auto engine = sample_stream(config.seed, i);
    RandomBits bits(engine);
    kbar[i] = static_cast<double>(bits.geometric_sum(config.m)) / m;
  });
  const auto mo = stats::moments(kbar);
  return {mo.mean, std::sqrt(mo.variance / static_cast<double>(config.n)), config};
}

WienerReport wiener_fdd(std::uint64_t M, const std::vector<double>& times, std::uint64_t n, std::uint64_t seed,
                        unsigned workers) {
  if (M == 0 || times.empty() || n < 2) throw std::invalid_argument("wiener_fdd needs M >= 1, times, n >= 2");
  if (static_cast<double>(M) * static_cast<double>(n) > kSymbolBudget) {
    throw BudgetExceeded("M * n exceeds the symbol sampling budget");
  }
  WienerReport rep;
  rep.M = M;
  rep.times = times;
  rep.n = n;
  rep.seed = seed;
  rep.sigma = 2.0 * std::numbers::ln2 * std::numbers::ln2;
  std::uint64_t last = 0;
  for (double t : times) {
    const double scaled = t * static_cast<double>(M);
    const auto step = static_cast<std::uint64_t>(std::llround(scaled));
    if (!(t > 0 && t <= 1) || std::abs(scaled - static_cast<double>(step)) > 1e-9 * static_cast<double>(M)) {
      throw std::invalid_argument("times must be multiples of 1/M in (0, 1]");
    }
    if (step <= last) throw std::invalid_argument("times must be strictly increasing");
    rep.steps.push_back(step);
    last = step;
  }

  const std::size_t s = times.size();
  std::vector<std::vector<double>> omega(s, std::vector<double>(n));
  const double scale = std::numbers::ln2 / std::sqrt(static_cast<double>(M));
  parallel_for(n, workers, [&](std::size_t i) {
    auto engine = sample_stream(seed, i);
    RandomBits bits(engine);
    std::uint64_t K = 0, done = 0;
    for (std::size_t j = 0; j < s; ++j) {
      K += bits.geometric_sum(rep.steps[j] - done);
      done = rep.steps[j];
      omega[j][i] = (2.0 * static_cast<double>(done) - static_cast<double>(K)) * scale;
    }
  });

  rep.covariance.assign(s, std::vector<double>(s));
  rep.expected.assign(s, std::vector<double>(s));
  for (std::size_t a = 0; a < s; ++a) {
    rep.means.push_back(stats::moments(omega[a]).mean);
    for (std::size_t b = 0; b < s; ++b) {
      rep.covariance[a][b] = stats::covariance(omega[a], omega[b]);
      rep.expected[a][b] = rep.sigma * std::min(times[a], times[b]);
      rep.max_relative_deviation =
          std::max(rep.max_relative_deviation, std::abs(rep.covariance[a][b] / rep.expected[a][b] - 1.0));
    }
  }
  // increments over (0, tau_1], (tau_1, tau_2], ...
  std::vector<std::vector<double>> inc(s, std::vector<double>(n));
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < n; ++i) inc[j][i] = omega[j][i] - (j ? omega[j - 1][i] : 0.0);
  }
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      rep.max_increment_correlation =
          std::max(rep.max_increment_correlation, std::abs(stats::correlation(inc[a], inc[b])));
    }
  }
  return rep;
}

ThetaConcentration theta_concentration(std::uint64_t m, std::uint64_t n, double gamma0, std::uint64_t seed,
                                       unsigned workers) {
  if (m < 2 || n == 0) throw std::invalid_argument("theta concentration needs m >= 2 and n >= 1");
  if (static_cast<double>(m) * static_cast<double>(n) > 1e9) {
    throw BudgetExceeded("m * n exceeds the exact theta budget");
  }
  ThetaConcentration rep;
  rep.m = m;
  rep.n = n;
  rep.gamma0 = gamma0;
  rep.seed = seed;
  rep.threshold = std::pow(static_cast<double>(m), gamma0);
  std::vector<unsigned char> exceed(n, 0);
  parallel_for(n, workers, [&](std::size_t i) {
    auto engine = sample_stream(seed, i);
    RandomBits bits(engine);
    const SymbolSequence seq = sample_sequence(m, bits);
    const Rational theta = theta_value(seq);
    exceed[i] = std::abs(theta.get_d()) > rep.threshold ? 1 : 0;
  });
  for (auto e : exceed) rep.exceedances += e;
  rep.estimate = static_cast<double>(rep.exceedances) / static_cast<double>(n);
  rep.upper95 = stats::clopper_pearson_upper(rep.exceedances, n, 0.95);
  return rep;
}

}  // namespace collatz
