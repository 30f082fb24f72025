#include "collatz/core_map.hpp"

#include <cmath>
#include <numbers>

namespace collatz {

std::optional<PiClass> is_pi_member(const BigInt& x) {
  if (x < 1) return std::nullopt;
  if (x == 1) return PiClass::fixed_point;
  const unsigned long r = mpz_fdiv_ui(x.get_mpz_t(), 6);
  if (r == 1) return PiClass::plus;
  if (r == 5) return PiClass::minus;
  return std::nullopt;
}

PiElement::PiElement(BigInt x) : value_(std::move(x)), class_(PiClass::fixed_point) {
  auto c = is_pi_member(value_);
  if (!c) throw std::invalid_argument(decimal(value_) + " is not coprime to 6 (or not positive)");
  class_ = *c;
}

std::optional<PiElement> PiElement::try_make(const BigInt& x) {
  if (auto c = is_pi_member(x)) return PiElement(x, *c);
  return std::nullopt;
}

unsigned long valuation2(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("valuation of zero is undefined");
  return mpz_scan1(n.get_mpz_t(), 0);
}

TStep t_apply(const PiElement& x) {
  BigInt z = 3 * x.value() + 1;
  const unsigned long k = valuation2(z);
  mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
  return {PiElement(std::move(z)), k};
}

std::optional<BigInt> odd_step_k(const BigInt& x, unsigned long k) {
  if (mpz_even_p(x.get_mpz_t())) throw std::invalid_argument("odd_step_k needs an odd integer");
  BigInt z = 3 * x + 1;
  if (valuation2(z) != k) return std::nullopt;
  // exact division; fdiv is exact here for negative z as well
  mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
  return z;
}

std::optional<PiElement> t_apply_k(const PiElement& x, unsigned long k) {
  auto y = odd_step_k(x.value(), k);
  if (!y) return std::nullopt;
  return PiElement(std::move(*y));
}

unsigned long OrbitRecord::valuation_sum() const {
  unsigned long total = 0;
  for (const auto& s : steps) total += s.k;
  return total;
}

OrbitRecord orbit(const PiElement& x0, std::size_t m) {
  OrbitRecord rec{x0, {}, std::nullopt};
  rec.steps.reserve(m);
  PiElement cur = x0;
  for (std::size_t j = 0; j < m; ++j) {
    auto [y, k] = t_apply(cur);
    if (y.is_fixed_point() && !rec.fixed_point_at) rec.fixed_point_at = j;
    rec.steps.push_back({y, k});
    cur = std::move(y);
  }
  return rec;
}

double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log of a non-positive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

ZStatistic z_statistic(const OrbitRecord& record) {
  if (record.steps.empty()) throw std::invalid_argument("z statistic needs at least one step");
  const double m = static_cast<double>(record.steps.size());
  return {log_big(record.last().value()) - log_big(record.origin.value()),
          m * std::log(3.0) - static_cast<double>(record.valuation_sum()) * std::numbers::ln2};
}

}  // namespace collatz
