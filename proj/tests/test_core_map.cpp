#include "collatz/core_map.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace collatz;

namespace {

BigInt random_pi(gmp_randclass& rng, unsigned bits) {
  BigInt x = rng.get_z_bits(bits);
  x = 6 * x + ((x & 1) == 0 ? 1 : 5);
  return x;
}

}  // namespace

TEST(PiMembership, Classes) {
  EXPECT_EQ(is_pi_member(25), PiClass::plus);
  EXPECT_EQ(is_pi_member(5), PiClass::minus);
  EXPECT_EQ(is_pi_member(1), PiClass::fixed_point);
  EXPECT_FALSE(is_pi_member(9));
  EXPECT_FALSE(is_pi_member(8));
  EXPECT_FALSE(is_pi_member(0));
  EXPECT_FALSE(is_pi_member(-5));
  EXPECT_THROW(PiElement(BigInt(9)), std::invalid_argument);
}

TEST(TApply, SmallValues) {
  auto s = t_apply(PiElement(BigInt(1)));
  EXPECT_EQ(s.y.value(), 1);
  EXPECT_EQ(s.k, 2u);
  s = t_apply(PiElement(BigInt(7)));
  EXPECT_EQ(s.y.value(), 11);
  EXPECT_EQ(s.k, 1u);
  s = t_apply(PiElement(BigInt(5)));
  EXPECT_EQ(s.y.value(), 1);
  EXPECT_EQ(s.k, 4u);
}

TEST(TApply, RestrictedBranch) {
  EXPECT_EQ(t_apply_k(PiElement(BigInt(7)), 1)->value(), 11);
  EXPECT_FALSE(t_apply_k(PiElement(BigInt(7)), 2));
  EXPECT_EQ(t_apply_k(PiElement(BigInt(5)), 4)->value(), 1);
  EXPECT_EQ(*odd_step_k(-1, 1), -1);
  EXPECT_THROW(odd_step_k(4, 1), std::invalid_argument);
}

TEST(TApply, RandomLargeInputsStayInPi) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(20241);
  for (int i = 0; i < 2000; ++i) {
    const BigInt x = random_pi(rng, 256);
    const auto [y, k] = t_apply(PiElement(x));
    EXPECT_GE(k, 1u);
    EXPECT_EQ(y.value() * pow2(k), 3 * x + 1);
    EXPECT_TRUE(mpz_odd_p(y.value().get_mpz_t()));
    EXPECT_NE(mpz_divisible_ui_p(y.value().get_mpz_t(), 3), 1);
    EXPECT_EQ(valuation2(3 * x + 1), k);
  }
}

TEST(Orbit, Examples) {
  auto rec = orbit(PiElement(BigInt(7)), 2);
  ASSERT_EQ(rec.length(), 2u);
  EXPECT_EQ(rec.steps[0].x.value(), 11);
  EXPECT_EQ(rec.steps[0].k, 1u);
  EXPECT_EQ(rec.steps[1].x.value(), 17);
  EXPECT_EQ(rec.steps[1].k, 1u);
  EXPECT_FALSE(rec.fixed_point_at);

  rec = orbit(PiElement(BigInt(25)), 1);
  EXPECT_EQ(rec.steps[0].x.value(), 19);
  EXPECT_EQ(rec.steps[0].k, 2u);

  rec = orbit(PiElement(BigInt(1)), 3);
  for (const auto& s : rec.steps) {
    EXPECT_EQ(s.x.value(), 1);
    EXPECT_EQ(s.k, 2u);
  }
  EXPECT_EQ(rec.fixed_point_at, 0u);
}

TEST(Orbit, ConcatenationOfPrefixes) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(7);
  for (int i = 0; i < 50; ++i) {
    const PiElement x(random_pi(rng, 200));
    const auto whole = orbit(x, 40);
    const auto head = orbit(x, 15);
    const auto tail = orbit(head.last(), 25);
    for (std::size_t j = 0; j < 15; ++j) EXPECT_EQ(whole.steps[j].x, head.steps[j].x);
    for (std::size_t j = 0; j < 25; ++j) {
      EXPECT_EQ(whole.steps[15 + j].x, tail.steps[j].x);
      EXPECT_EQ(whole.steps[15 + j].k, tail.steps[j].k);
    }
    EXPECT_EQ(whole.valuation_sum(), head.valuation_sum() + tail.valuation_sum());
  }
}

TEST(ZStatistic, Examples) {
  EXPECT_DOUBLE_EQ(z_statistic(orbit(PiElement(BigInt(1)), 1)).exact, 0.0);
  EXPECT_NEAR(z_statistic(orbit(PiElement(BigInt(5)), 1)).exact, -std::log(5.0), 1e-15);
  EXPECT_NEAR(z_statistic(orbit(PiElement(BigInt(7)), 2)).exact, std::log(17.0 / 7.0), 1e-15);
  EXPECT_THROW(z_statistic(orbit(PiElement(BigInt(7)), 0)), std::invalid_argument);
}

TEST(ZStatistic, SymbolFormTracksExactValue) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(99);
  for (int i = 0; i < 200; ++i) {
    const PiElement x(random_pi(rng, 400));
    const auto rec = orbit(x, 100);
    double slack = 0;
    BigInt prev = x.value();
    for (const auto& s : rec.steps) {
      ASSERT_GT(prev, 1'000'000);
      slack += 1.0 / (3.0 * mpz_get_d(prev.get_mpz_t()));
      prev = s.x.value();
    }
    const auto z = z_statistic(rec);
    EXPECT_LE(std::abs(z.exact - z.symbol_form), slack + 1e-9);
  }
}

TEST(LogBig, MatchesDoubleLog) {
  EXPECT_NEAR(log_big(BigInt(1000003)), std::log(1000003.0), 1e-12);
  EXPECT_NEAR(log_big(pow2(5000)), 5000 * std::log(2.0), 1e-9);
  EXPECT_THROW(log_big(0), std::domain_error);
}
