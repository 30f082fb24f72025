#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatz {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

using BigInt = mpz_class;
using Rational = mpq_class;

/// Residue class sign mod 6: +1 for x = 1 (mod 6), -1 for x = 5 (mod 6).
/// Used both for the starting class (eps) and for image classes (delta).
enum class Sign : int { minus = -1, plus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr Sign sign_product(Sign a, Sign b) noexcept {
  return to_int(a) * to_int(b) > 0 ? Sign::plus : Sign::minus;
}

Sign sign_from_int(long v);  // throws std::invalid_argument unless v = +-1
Sign parse_sign(const std::string& text);  // accepts "+1", "1", "-1", "+", "-"
std::string to_string(Sign s);

BigInt pow2(unsigned long e);
BigInt pow3(unsigned long e);
Rational dyadic(long numerator, unsigned long exponent);  // numerator / 2^exponent

/// Decimal rendering used across every external interface.
inline std::string decimal(const BigInt& v) { return v.get_str(10); }
BigInt parse_decimal(const std::string& text);  // throws std::invalid_argument

/// Thrown when a request would exceed an enumeration or sampling budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an exact check that must hold does not (oracle mismatch etc.).
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace collatz
