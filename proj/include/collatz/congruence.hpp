#pragma once

// Congruence solving behind the inductive construction of progressions.

#include "collatz/types.hpp"

#include <cstddef>
#include <cstdint>

namespace collatz {

/// Inverse of a modulo n by the extended Euclidean algorithm.
/// Throws std::domain_error when gcd(a, n) != 1 or n < 2.
BigInt mod_inverse(const BigInt& a, const BigInt& n);

/// One step of the construction. The class {6(3^m p + offset) + delta : p}
/// has members whose next valuation is exactly k precisely when
/// p = 2^k p' + digit; their images are {6(3^{m+1} p' + next_offset) + next_delta}.
struct ForwardStep {
  BigInt digit;        // in [0, 2^k)
  BigInt next_offset;  // in [0, 3^{m+1}]
  Sign next_delta;
};

ForwardStep forward_step(const BigInt& offset, Sign delta, std::size_t m, unsigned long k);

namespace detail {

// Fixed-width variant of forward_step used by the ensemble enumerator.
// Bit-identical to forward_step whenever fits_fixed_width(m, k) holds.
struct FixedForwardStep {
  std::uint64_t digit;
  i128 next_offset;
  Sign next_delta;
};

bool fits_fixed_width(std::size_t m, unsigned long k);
FixedForwardStep forward_step_fixed(i128 offset, Sign delta, i128 pow3m, unsigned long k);

}  // namespace detail
}  // namespace collatz
