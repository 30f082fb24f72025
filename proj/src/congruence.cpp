#include "collatz/congruence.hpp"

#include "collatz/structure.hpp"

#include <cmath>
#include <string>

namespace collatz {

BigInt mod_inverse(const BigInt& a, const BigInt& n) {
  if (n < 2) throw std::domain_error("modulus must be at least 2");
  // Invariant: old_r = old_s * a (mod n), r = s * a (mod n).
  BigInt old_r = a % n;
  if (old_r < 0) old_r += n;
  BigInt r = n;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt quot;
    mpz_fdiv_q(quot.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    BigInt tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("no inverse: gcd(a, n) = " + decimal(old_r));
  BigInt inv = old_s % n;
  if (inv < 0) inv += n;
  return inv;
}

ForwardStep forward_step(const BigInt& offset, Sign delta, std::size_t m, unsigned long k) {
  if (k == 0) throw std::invalid_argument("valuation k must be positive");
  const BigInt p3 = pow3(m);
  const BigInt mod = pow2(k);
  // 3x + 1 = 18 * 3^m p + (18 offset + 3 delta + 1); both parts even, so halve:
  // need a p + b = 2^{k-1} (mod 2^k) with a = 9 * 3^m odd.
  const BigInt a = 9 * p3;
  const BigInt b = (18 * offset + 3 * to_int(delta) + 1) / 2;
  // a is odd, so its inverse mod 2^k exists and the forced residue is unique.
  const BigInt inv = mod_inverse(a, mod);
  if ((a * inv) % mod != 1) throw VerificationFailure("modular inverse check failed");
  BigInt digit = ((pow2(k - 1) - b) * inv) % mod;
  if (digit < 0) digit += mod;

  const BigInt x = 6 * (p3 * digit + offset) + to_int(delta);
  BigInt z = 3 * x + 1;
  if (z == 0 || mpz_scan1(z.get_mpz_t(), 0) != k) {
    throw VerificationFailure("congruence solve did not force valuation " + std::to_string(k));
  }
  mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
  const Sign next_delta = delta_from_k(k);
  BigInt shifted = z - to_int(next_delta);
  if (!mpz_divisible_ui_p(shifted.get_mpz_t(), 6)) {
    throw VerificationFailure("image is not congruent to the forced delta mod 6");
  }
  BigInt next_offset = shifted / 6;
  if (next_offset < 0 || next_offset > 3 * p3) {
    throw VerificationFailure("image offset " + decimal(next_offset) + " outside [0, 3^(m+1)]");
  }
  return {std::move(digit), std::move(next_offset), next_delta};
}

namespace detail {

bool fits_fixed_width(std::size_t m, unsigned long k) {
  // 18 * 3^{m+1} * 2^k must stay well inside a signed 128-bit integer, and
  // the digit must fit into 64 bits.
  return k <= 63 && static_cast<double>(m + 1) * std::log2(3.0) + static_cast<double>(k) + 6.0 < 120.0;
}

FixedForwardStep forward_step_fixed(i128 offset, Sign delta, i128 pow3m, unsigned long k) {
  using u64 = std::uint64_t;
  const u64 mask = (k == 64) ? ~u64{0} : ((u64{1} << k) - 1);
  const u64 a = static_cast<u64>(9 * pow3m);  // odd, only needed mod 2^k
  u64 inv = a;                                // Newton: each step doubles correct bits
  for (int i = 0; i < 6; ++i) inv *= 2 - a * inv;
  const i128 b = (18 * offset + 3 * to_int(delta) + 1) / 2;
  const u64 rhs = (u64{1} << (k - 1)) - static_cast<u64>(b);
  const u64 digit = (rhs * inv) & mask;

  const i128 z = 3 * (6 * (pow3m * static_cast<i128>(digit) + offset) + to_int(delta)) + 1;
  const i128 y = z / (static_cast<i128>(1) << k);
  const Sign next_delta = (k % 2 == 0) ? Sign::plus : Sign::minus;
  return {digit, (y - to_int(next_delta)) / 6, next_delta};
}

}  // namespace detail
}  // namespace collatz
