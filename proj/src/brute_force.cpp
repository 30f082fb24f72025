// Brute-force oracle for the progression of a symbol sequence. Deliberately
// shares nothing with the congruence construction: plain fixed-width
// arithmetic over an explicit scan of starting points.

#include "collatz/structure.hpp"

#include <string>

namespace collatz {
namespace {

constexpr std::uint64_t kMaxCandidates = 2'000'000'000ULL;

BigInt to_big(u128 v) {
  BigInt hi(static_cast<unsigned long>(v >> 64));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

// Follows ks from x; returns the image or 0 when some valuation differs.
u128 follow(u128 x, const std::vector<unsigned long>& ks) {
  for (auto k : ks) {
    const u128 z = 3 * x + 1;
    const auto lo = static_cast<std::uint64_t>(z);
    const unsigned long v = lo != 0 ? static_cast<unsigned long>(__builtin_ctzll(lo))
                                    : 64 + static_cast<unsigned long>(__builtin_ctzll(static_cast<std::uint64_t>(z >> 64)));
    if (v != k) return 0;
    x = z >> k;
  }
  return x;
}

}  // namespace

StructurePair brute_force_progression(const SymbolSequence& seq, std::uint64_t p_count) {
  if (p_count < 2) throw std::invalid_argument("oracle needs p_count >= 2");
  const unsigned long K = seq.total();
  const std::size_t m = seq.m();
  if (K > 40 || p_count > (1ULL << 20) || (6ULL << K) * p_count / 6 > kMaxCandidates) {
    throw BudgetExceeded("brute-force scan too large for K = " + std::to_string(K));
  }
  const std::uint64_t sigma_mod = 6ULL << K;  // 6 * 2^K
  const std::uint64_t bound = sigma_mod * p_count;
  const int eps = to_int(seq.eps());

  struct Survivor {
    std::uint64_t x;
    u128 y;
  };
  std::vector<Survivor> survivors;
  for (std::uint64_t x = (eps == 1 ? 7 : 5); x < bound; x += 6) {
    if (const u128 y = follow(x, seq.ks()); y != 0) survivors.push_back({x, y});
  }
  if (survivors.empty()) throw VerificationFailure("no starting point admits the word");

  const std::uint64_t base = survivors.front().x % sigma_mod;
  for (const auto& s : survivors) {
    if (s.x % sigma_mod != base) throw VerificationFailure("survivors are not a single progression");
  }
  // The survivors must be every positive member of the class below the bound
  // (x = 1 is excluded from the scan as the fixed point).
  std::uint64_t expected = 0;
  for (std::uint64_t x = base; x < bound; x += sigma_mod) {
    if (x > 1) ++expected;
  }
  if (expected != survivors.size()) throw VerificationFailure("progression has members the scan rejected");

  // base = 6q + eps (mod 6 * 2^K); for eps = -1 and q = 0 it wraps to 6 * 2^K - 1
  const auto base_signed = static_cast<std::int64_t>(base);
  const auto q = static_cast<std::uint64_t>((base_signed - eps) / 6) % (1ULL << K);

  const BigInt lambda_mod = pow3(m);
  const auto delta_raw = static_cast<int>(survivors.front().y % 6);
  if (delta_raw != 1 && delta_raw != 5) throw VerificationFailure("image not coprime to 6");
  const Sign delta = delta_raw == 1 ? Sign::plus : Sign::minus;

  // p indexes members from 6q + eps, which is -1 when eps = -1 and q = 0
  const std::int64_t first = 6 * static_cast<std::int64_t>(q) + eps;
  std::optional<BigInt> offset;
  for (const auto& s : survivors) {
    if (static_cast<int>(s.y % 6) != delta_raw) throw VerificationFailure("images change class mod 6");
    const auto p = static_cast<std::uint64_t>((static_cast<std::int64_t>(s.x) - first) / static_cast<std::int64_t>(sigma_mod));
    const BigInt y = to_big(s.y);
    const BigInt off = (y - to_int(delta)) / 6 - lambda_mod * BigInt(static_cast<unsigned long>(p));
    if (!offset) {
      offset = off;
    } else if (*offset != off) {
      throw VerificationFailure("images are not a single progression with the same index");
    }
  }

  std::vector<BigInt> digits;
  unsigned long shift = 0;
  for (auto k : seq.ks()) {
    digits.push_back(BigInt(static_cast<unsigned long>((q >> shift) & ((1ULL << k) - 1))));
    shift += k;
  }
  BigInt r = *offset % lambda_mod;
  if (r < 0) r += lambda_mod;
  return {seq, SigmaProgression{K, BigInt(static_cast<unsigned long>(q)), seq.eps()},
          LambdaClass{m, std::move(r), std::move(*offset), delta}, std::move(digits)};
}

}  // namespace collatz
