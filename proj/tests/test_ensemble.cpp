#include "collatz/ensemble.hpp"
#include "collatz/walk.hpp"
#include "words.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace collatz;
using collatz::testing::for_each_word;

namespace {

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::uint64_t count_compositions(std::size_t m, unsigned long k) {
  if (m == 0) return k == 0 ? 1 : 0;
  std::uint64_t total = 0;
  for (unsigned long first = 1; first <= k; ++first) total += count_compositions(m - 1, k - first);
  return total;
}

// Same table computed one word at a time through build().
std::map<ClassKey, EnsembleEntry> slow_table(std::size_t m, unsigned long k_cap) {
  std::map<ClassKey, EnsembleEntry> out;
  std::vector<unsigned long> ks(m, 1);
  while (true) {
    for (Sign eps : {Sign::plus, Sign::minus}) {
      const SymbolSequence seq(ks, eps);
      const auto pair = build(seq);
      auto& e = out[ClassKey{pair.lambda.r, pair.lambda.delta}];
      e.mass += sequence_probability(seq);
      e.count += 1;
    }
    std::size_t i = 0;
    while (i < m && ks[i] == k_cap) ks[i++] = 1;
    if (i == m) break;
    ++ks[i];
  }
  return out;
}

}  // namespace

TEST(SequenceProbability, Examples) {
  EXPECT_EQ(sequence_probability(SymbolSequence({1}, Sign::plus)), frac(1, 4));
  EXPECT_EQ(sequence_probability(SymbolSequence({2, 3}, Sign::minus)), frac(1, 64));
  Rational total = 0;
  for (unsigned long k = 1; k <= 20; ++k) {
    total += sequence_probability(SymbolSequence({k}, Sign::plus));
    total += sequence_probability(SymbolSequence({k}, Sign::minus));
  }
  EXPECT_EQ(total, 1 - frac(1, 1 << 20));
}

TEST(Density, CountsMembers) {
  const auto a = build(SymbolSequence({1}, Sign::plus)).sigma;
  EXPECT_NEAR(empirical_density(a, BigInt(12'000'000)).get_d(), 0.25, 1e-5);
  const auto b = build(SymbolSequence({2}, Sign::minus)).sigma;
  EXPECT_NEAR(empirical_density(b, BigInt(10'000'000)).get_d(), 0.125, 1e-5);
  EXPECT_THROW(empirical_density(SigmaProgression{0, 0, Sign::plus}, BigInt(1000)), std::invalid_argument);
}

TEST(Density, MatchesDirectCount) {
  for_each_word(3, 5, [](const SymbolSequence& seq) {
    const auto sigma = build(seq).sigma;
    const long N = 5000;
    long hits = 0, pi_count = 0;
    for (long x = 1; x <= N; ++x) {
      if (x % 2 == 0 || x % 3 == 0) continue;
      ++pi_count;
      const BigInt n = (BigInt(x) - to_int(seq.eps()));
      if (n % 6 == 0 && BigInt((n / 6 - sigma.q) % sigma.modulus()) == 0) ++hits;
    }
    const Rational d = empirical_density(sigma, BigInt(N));
    ASSERT_EQ(d, Rational(hits, pi_count)) << seq.total();
  });
}

TEST(Ensemble, SingleSymbol) {
  const auto table = enumerate_ensemble(1, 2, 1);
  EXPECT_EQ(table.sequences, 4u);
  std::map<ClassKey, EnsembleEntry> expected;
  for (unsigned long k : {1ul, 2ul}) {
    for (Sign eps : {Sign::plus, Sign::minus}) {
      const auto p = base_case(k, eps);
      auto& e = expected[ClassKey{p.lambda.r, p.lambda.delta}];
      e.mass += frac(1, 1 << (k + 1));
      e.count += 1;
    }
  }
  ASSERT_EQ(table.entries.size(), expected.size());
  for (const auto& [key, e] : expected) {
    EXPECT_EQ(table.entries.at(key).mass, e.mass);
    EXPECT_EQ(table.entries.at(key).count, e.count);
  }
  EXPECT_EQ(table.enumerated_mass(), frac(3, 4));
}

TEST(Ensemble, MassIsConserved) {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (unsigned long k_cap = 1; k_cap <= 8; ++k_cap) {
      const auto t = enumerate_ensemble(m, k_cap, 1);
      EXPECT_EQ(t.enumerated_mass() + t.tail_mass, 1) << m << ' ' << k_cap;
    }
  }
  const auto t = enumerate_ensemble(2, 6, 1);
  EXPECT_EQ(t.enumerated_mass() + t.tail_mass, 1);
}

TEST(Ensemble, PerClassAdditivity) {
  for (auto [m, k_cap] : {std::pair<std::size_t, unsigned long>{1, 6}, {2, 6}, {3, 5}, {4, 4}}) {
    const auto fast = enumerate_ensemble(m, k_cap, 2);
    const auto slow = slow_table(m, k_cap);
    ASSERT_EQ(fast.entries.size(), slow.size());
    for (const auto& [key, e] : slow) {
      ASSERT_EQ(fast.entries.at(key).mass, e.mass);
      ASSERT_EQ(fast.entries.at(key).count, e.count);
    }
  }
}

TEST(Ensemble, IndependentOfWorkerCount) {
  const auto a = enumerate_ensemble(4, 7, 1);
  const auto b = enumerate_ensemble(4, 7, 3);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  auto it = b.entries.begin();
  for (const auto& [key, e] : a.entries) {
    EXPECT_EQ(key, it->first);
    EXPECT_EQ(e.mass, it->second.mass);
    EXPECT_EQ(e.count, it->second.count);
    ++it;
  }
}

TEST(Ensemble, BudgetGuard) {
  EXPECT_THROW(enumerate_ensemble(20, 40, 1), BudgetExceeded);
}

TEST(Entropy, CeilingAndBounds) {
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto rep = entropy(enumerate_ensemble(m, 10, 1), 1.0);
    EXPECT_LE(rep.H, rep.ceiling + rep.tail_error_bound);
    EXPECT_NEAR(rep.ceiling, std::log(2.0) + static_cast<double>(m) * std::log(3.0), 1e-12);
    EXPECT_GE(rep.H, 0.0);
  }
  const auto one = entropy(enumerate_ensemble(1, 20, 1));
  EXPECT_LE(one.H, std::log(6.0));
  const auto four = entropy(enumerate_ensemble(4, 12, 1), 0.0);
  EXPECT_GE(four.H, 4 * std::log(3.0) - 7 * std::log(4.0));
  EXPECT_DOUBLE_EQ(four.lower_bound, 4 * std::log(3.0) - 7 * std::log(4.0));
}

TEST(Entropy, SingleStepLimit) {
  // Classes after one step: (r, delta) is fixed by k mod 6 and eps, so masses are geometric sums.
  const auto rep = entropy(enumerate_ensemble(1, 40, 1));
  std::map<std::pair<long, int>, double> mass;
  for (unsigned long k = 1; k <= 40; ++k) {
    for (Sign eps : {Sign::plus, Sign::minus}) {
      const auto p = base_case(k, eps);
      mass[{p.lambda.r.get_si(), to_int(p.lambda.delta)}] += std::ldexp(1.0, -static_cast<int>(k) - 1);
    }
  }
  double total = 0, H = 0;
  for (const auto& [key, w] : mass) total += w;
  for (const auto& [key, w] : mass) H -= (w / total) * std::log(w / total);
  EXPECT_NEAR(rep.H, H, 1e-12);
}

TEST(Compositions, MatchEnumeration) {
  EXPECT_EQ(composition_count(1, 5), 1);
  EXPECT_EQ(composition_count(2, 4), 3);
  EXPECT_EQ(composition_count(3, 6), 10);
  EXPECT_EQ(composition_count(4, 3), 0);
  for (std::size_t m = 1; m <= 6; ++m) {
    for (unsigned long k = 1; k <= 20; ++k) {
      EXPECT_EQ(composition_count(m, k), count_compositions(m, k)) << m << ' ' << k;
    }
  }
}

TEST(ThetaBucket, Examples) {
  EXPECT_EQ(theta_bucket(SymbolSequence({1}, Sign::plus)), 5);
  EXPECT_EQ(theta_bucket(SymbolSequence({2}, Sign::minus)), -3);
  EXPECT_EQ(theta_bucket(SymbolSequence({1}, Sign::plus), 1), 0);
  EXPECT_EQ(theta_bucket(SymbolSequence({2}, Sign::minus), 1), -1);
}

TEST(Buckets, ReportSingleStep) {
  const auto rep = bucket_mass_bound_check(1, 1);
  EXPECT_EQ(rep.max_mass, frac(1, 4));
  EXPECT_FALSE(rep.within_bound());
  EXPECT_EQ(rep.bound, frac(1, 60));
}

TEST(Buckets, DomainResiduesAreDistinct) {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (unsigned long k = m; k <= 2 * m + 4; ++k) {
      EXPECT_TRUE(bucket_mass_bound_check(m, k).kappa_distinct) << m << ' ' << k;
    }
  }
}

TEST(Buckets, WithinLatticeBound) {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (unsigned long k = m; k <= 2 * m + 4; ++k) {
      const auto rep = bucket_mass_bound_check(m, k);
      EXPECT_TRUE(rep.within_lattice_bound()) << m << ' ' << k << " ratio " << rep.ratio();
    }
  }
}

TEST(Buckets, MaxMassIsAttained) {
  // Recompute the heaviest (class, bucket) cell directly.
  for (auto [m, k] : {std::pair<std::size_t, unsigned long>{2, 4}, {3, 6}, {3, 9}}) {
    const auto rep = bucket_mass_bound_check(m, k);
    std::map<std::tuple<BigInt, int, long>, Rational> cells;
    for_each_word(m, k, [&](const SymbolSequence& seq) {
      if (seq.m() != m || seq.total() != k) return;
      const auto pair = build(seq);
      cells[{pair.lambda.r, to_int(pair.lambda.delta), theta_bucket(seq)}] += sequence_probability(seq);
    });
    Rational best = 0;
    for (const auto& [key, w] : cells) best = std::max(best, w);
    EXPECT_EQ(rep.max_mass, best);
  }
}

TEST(Preimages, ScalingReport) {
  const auto rep = preimage_scaling_report(enumerate_ensemble(3, 10, 1));
  EXPECT_NEAR(rep.heuristic, 64.0 / 27.0, 1e-12);
  EXPECT_EQ(BigInt(rep.reachable) + rep.unreachable, 2 * pow3(3));
  const auto one = preimage_scaling_report(enumerate_ensemble(1, 6, 1));
  EXPECT_NEAR(one.heuristic, 4.0 / 3.0, 1e-12);
  EXPECT_GT(one.mean_reachable, 0.0);
}
