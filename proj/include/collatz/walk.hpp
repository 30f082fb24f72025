#pragma once

// The image labels (r_j, delta_j) along a word as a random walk: admissibility
// rules, the backward equation, and the exact rho / kappa / theta split.

#include "collatz/structure.hpp"
#include "collatz/types.hpp"

#include <cstddef>
#include <vector>

namespace collatz {

/// 2^k = delta + 3 a1, a1 = 2 a2 + 1, a2 = g + 3 a3.
struct KDecomposition {
  unsigned long k;
  Sign delta;
  BigInt a1, a2, a3;
  int g;  // 0, 1 or 2
};

KDecomposition k_decompose(unsigned long k);

/// r = h + 3 r1.
struct RDecomposition {
  BigInt r;
  int h;  // 0, 1 or 2
  BigInt r1;
};

RDecomposition r_decompose(const BigInt& r);

/// c(k, delta, delta_prev) = -(a1 delta - delta_prev) / 2.
/// Throws std::invalid_argument unless delta = delta_from_k(k).
BigInt c_coefficient(unsigned long k, Sign delta, Sign delta_prev);

/// Parity rule plus h + g + (1 - delta_prev delta) / 2 = 0 (mod 3).
bool admissible_k(const BigInt& r, Sign delta, Sign delta_prev, unsigned long k);

/// Unique r_prev in [0, 3^{m-1}) with 2^k r - 3^m t = 3 r_prev + c for some
/// integer t. Throws std::invalid_argument on inadmissible input or r out of range.
BigInt backward_step(const BigInt& r, Sign delta, unsigned long k, Sign delta_prev, std::size_t m);

struct WalkState {
  BigInt r;  // class label in [0, 3^j)
  Sign delta;

  friend bool operator==(const WalkState&, const WalkState&) = default;
};

struct WalkPath {
  SymbolSequence seq;
  std::vector<WalkState> states;  // j = 0..m, states[0] = (0, eps)
};

/// Forward states from prefix constructions; each step is checked against
/// admissible_k and backward_step (throws VerificationFailure on mismatch).
WalkPath walk_path(const SymbolSequence& seq);

/// rho = offset / 3^m, kappa = q / 2^K, theta = sum_s 3^{m-s} c_s / 2^{k_s + ... + k_m}.
/// rho = kappa + theta / 3^m exactly; 0 <= kappa < 1 and 0 <= rho <= 1.
struct ThetaDecomposition {
  Rational rho;
  Rational kappa;
  Rational theta;
};

/// Throws VerificationFailure if the exact identity fails.
ThetaDecomposition theta_decompose(const SymbolSequence& seq);

/// theta alone, by the recursion theta_j = (3 theta_{j-1} + c_j) / 2^{k_j}.
Rational theta_value(const SymbolSequence& seq);

}  // namespace collatz
