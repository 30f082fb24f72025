#include "collatz/structure.hpp"

#include "collatz/congruence.hpp"
#include "collatz/core_map.hpp"

#include <numeric>
#include <string>

namespace collatz {

SymbolSequence::SymbolSequence(std::vector<unsigned long> ks, Sign eps)
    : ks_(std::move(ks)), eps_(eps), total_(0) {
  if (ks_.empty()) throw std::invalid_argument("symbol sequence must have at least one symbol");
  for (auto k : ks_) {
    if (k == 0) throw std::invalid_argument("symbols k_j must be positive");
    total_ += k;
  }
}

SymbolSequence SymbolSequence::prefix(std::size_t j) const {
  if (j == 0 || j > ks_.size()) throw std::out_of_range("prefix length out of range");
  return SymbolSequence({ks_.begin(), ks_.begin() + static_cast<std::ptrdiff_t>(j)}, eps_);
}

BigInt SigmaProgression::presented_q() const { return q == 0 ? modulus() : q; }

BigInt SigmaProgression::member(const BigInt& p) const {
  return 6 * (modulus() * p + q) + to_int(eps);
}

BigInt LambdaClass::presented_r() const { return r == 0 ? modulus() : r; }

BigInt LambdaClass::member(const BigInt& p) const {
  return 6 * (modulus() * p + offset) + to_int(delta);
}

Sign delta_from_k(unsigned long k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  return k % 2 == 0 ? Sign::plus : Sign::minus;
}

namespace {

// Depth-m state with the progression data; depth 0 is Pi^eps itself
// ({6p + eps}, q = 0, offset = 0, delta = eps).
StructurePair advance(SymbolSequence seq, const SigmaProgression& sigma, const LambdaClass& lambda,
                      std::vector<BigInt> digits, unsigned long k) {
  ForwardStep step = forward_step(lambda.offset, lambda.delta, lambda.m, k);
  SigmaProgression next_sigma{sigma.K + k, sigma.q + sigma.modulus() * step.digit, sigma.eps};
  const std::size_t m = lambda.m + 1;
  BigInt r = step.next_offset % pow3(m);
  LambdaClass next_lambda{m, std::move(r), std::move(step.next_offset), step.next_delta};
  digits.push_back(std::move(step.digit));
  return {std::move(seq), std::move(next_sigma), std::move(next_lambda), std::move(digits)};
}

}  // namespace

StructurePair base_case(unsigned long k1, Sign eps) {
  SigmaProgression root_sigma{0, 0, eps};
  LambdaClass root_lambda{0, 0, 0, eps};
  return advance(SymbolSequence({k1}, eps), root_sigma, root_lambda, {}, k1);
}

StructurePair extend(const StructurePair& pair, unsigned long k_next) {
  std::vector<unsigned long> ks = pair.seq.ks();
  ks.push_back(k_next);
  return advance(SymbolSequence(std::move(ks), pair.seq.eps()), pair.sigma, pair.lambda, pair.digits,
                 k_next);
}

StructurePair build(const SymbolSequence& seq) {
  StructurePair pair = base_case(seq.ks().front(), seq.eps());
  for (std::size_t j = 1; j < seq.m(); ++j) pair = extend(pair, seq.ks()[j]);
  return pair;
}

SamePResult verify_same_p(const StructurePair& pair, std::uint64_t p_max) {
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    const BigInt pp(static_cast<unsigned long>(p));
    BigInt x = pair.sigma.member(pp);
    bool ok = true;
    for (auto k : pair.seq.ks()) {
      auto y = odd_step_k(x, k);
      if (!y) {
        ok = false;
        break;
      }
      x = std::move(*y);
    }
    if (!ok || x != pair.lambda.member(pp)) return {false, p};
  }
  return {true, std::nullopt};
}

bool digits_consistent(const StructurePair& pair) {
  if (pair.digits.size() != pair.seq.m()) return false;
  BigInt q = 0;
  unsigned long shift = 0;
  for (std::size_t j = 0; j < pair.digits.size(); ++j) {
    const auto k = pair.seq.ks()[j];
    if (pair.digits[j] < 0 || pair.digits[j] >= pow2(k)) return false;
    q += pair.digits[j] * pow2(shift);
    shift += k;
  }
  return q == pair.sigma.q && shift == pair.sigma.K;
}

}  // namespace collatz
