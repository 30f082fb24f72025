#pragma once

// Symbol sequences (k_1, ..., k_m, eps) and the progressions they index.
//
// For a word w = (k_1, ..., k_m, eps) the starting points admitting w form
//   Sigma = {6(2^K p + q) + eps : p >= 0},  K = k_1 + ... + k_m,
// and m applications of the restricted steps send the member with index p to
// the member with the same index p of
//   Lambda = {6(3^m p + offset) + delta}.
// Residues are stored half-open (q in [0, 2^K), r in [0, 3^m)); offset is
// the same-p representative of r and lies in [0, 3^m].

#include "collatz/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace collatz {

class SymbolSequence {
 public:
  /// Throws std::invalid_argument on an empty word or a zero symbol.
  SymbolSequence(std::vector<unsigned long> ks, Sign eps);

  const std::vector<unsigned long>& ks() const noexcept { return ks_; }
  Sign eps() const noexcept { return eps_; }
  std::size_t m() const noexcept { return ks_.size(); }
  unsigned long total() const noexcept { return total_; }  // K

  /// The first j symbols with the same eps (1 <= j <= m).
  SymbolSequence prefix(std::size_t j) const;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  std::vector<unsigned long> ks_;
  Sign eps_;
  unsigned long total_;
};

struct SigmaProgression {
  unsigned long K;
  BigInt q;  // [0, 2^K)
  Sign eps;

  BigInt modulus() const { return pow2(K); }
  /// Representative in [1, 2^K].
  BigInt presented_q() const;
  /// 6(2^K p + q) + eps; equals -1 or 1 only for p = 0 when q = 0.
  BigInt member(const BigInt& p) const;

  friend bool operator==(const SigmaProgression&, const SigmaProgression&) = default;
};

struct LambdaClass {
  std::size_t m;
  BigInt r;       // class label in [0, 3^m)
  BigInt offset;  // same-p representative, r or r + 3^m
  Sign delta;

  BigInt modulus() const { return pow3(m); }
  BigInt presented_r() const;
  /// 6(3^m p + offset) + delta: the image of Sigma's member with index p.
  BigInt member(const BigInt& p) const;

  friend bool operator==(const LambdaClass&, const LambdaClass&) = default;
};

struct StructurePair {
  SymbolSequence seq;
  SigmaProgression sigma;
  LambdaClass lambda;
  std::vector<BigInt> digits;  // t_j in [0, 2^{k_j}); q = sum_j t_j 2^{k_1 + ... + k_{j-1}}

  friend bool operator==(const StructurePair&, const StructurePair&) = default;
};

/// +1 when k is even, -1 when k is odd (delta = 2^k mod 3).
Sign delta_from_k(unsigned long k);

StructurePair base_case(unsigned long k1, Sign eps);
StructurePair extend(const StructurePair& pair, unsigned long k_next);
StructurePair build(const SymbolSequence& seq);

/// Independent oracle: scans every x in Pi^eps below 6 * 2^K * p_count and keeps
/// those whose first m valuations are exactly ks. Throws VerificationFailure
/// when the survivors or their images are not single progressions, and
/// BudgetExceeded when the scan would be too large for 64-bit arithmetic.
StructurePair brute_force_progression(const SymbolSequence& seq, std::uint64_t p_count);

struct SamePResult {
  bool holds;
  std::optional<std::uint64_t> counterexample;

  explicit operator bool() const noexcept { return holds; }
};

SamePResult verify_same_p(const StructurePair& pair, std::uint64_t p_max);

/// Checks the recorded digits against q (exact digit identity).
bool digits_consistent(const StructurePair& pair);

}  // namespace collatz
