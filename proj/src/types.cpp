#include "collatz/types.hpp"

namespace collatz {

Sign sign_from_int(long v) {
  if (v == 1) return Sign::plus;
  if (v == -1) return Sign::minus;
  throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(v));
}

Sign parse_sign(const std::string& text) {
  if (text == "+1" || text == "1" || text == "+") return Sign::plus;
  if (text == "-1" || text == "-") return Sign::minus;
  throw std::invalid_argument("cannot parse sign '" + text + "' (expected +1 or -1)");
}

std::string to_string(Sign s) { return s == Sign::plus ? "+1" : "-1"; }

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigInt pow3(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
  return r;
}

Rational dyadic(long numerator, unsigned long exponent) {
  Rational q(BigInt(numerator), pow2(exponent));
  q.canonicalize();
  return q;
}

BigInt parse_decimal(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  return v;
}

}  // namespace collatz
