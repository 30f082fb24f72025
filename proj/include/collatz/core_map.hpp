#pragma once

// The accelerated map T x = (3x + 1) / 2^k on positive integers coprime to 6.

#include "collatz/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace collatz {

enum class PiClass { plus, minus, fixed_point };

/// Membership in Pi = {1} U Pi^{+1} U Pi^{-1}; nullopt when x is even or a
/// multiple of 3 (or x < 1).
std::optional<PiClass> is_pi_member(const BigInt& x);

/// A positive integer coprime to 6.
class PiElement {
 public:
  /// Throws std::invalid_argument when x is not in Pi.
  explicit PiElement(BigInt x);
  static std::optional<PiElement> try_make(const BigInt& x);

  const BigInt& value() const noexcept { return value_; }
  PiClass pi_class() const noexcept { return class_; }
  bool is_fixed_point() const noexcept { return class_ == PiClass::fixed_point; }

  friend bool operator==(const PiElement& a, const PiElement& b) { return a.value_ == b.value_; }

 private:
  PiElement(BigInt x, PiClass c) : value_(std::move(x)), class_(c) {}
  BigInt value_;
  PiClass class_;
};

/// Exact 2-adic valuation of a nonzero integer.
unsigned long valuation2(const BigInt& n);

struct TStep {
  PiElement y;
  unsigned long k;
};

TStep t_apply(const PiElement& x);

/// T^{(k)}: defined only where the valuation of 3x + 1 is exactly k.
std::optional<PiElement> t_apply_k(const PiElement& x, unsigned long k);

/// The same restricted step on any odd integer of Z (used where progression
/// representatives at p = 0 reach x = -1). Throws on even input.
std::optional<BigInt> odd_step_k(const BigInt& x, unsigned long k);

struct OrbitStep {
  PiElement x;
  unsigned long k;
};

struct OrbitRecord {
  PiElement origin;
  std::vector<OrbitStep> steps;
  /// Index (0-based into steps) of the first visit to the fixed point, if any.
  std::optional<std::size_t> fixed_point_at;

  std::size_t length() const noexcept { return steps.size(); }
  const PiElement& last() const { return steps.empty() ? origin : steps.back().x; }
  unsigned long valuation_sum() const;
};

/// m successive applications of T. Orbits through 1 keep looping on (1, 2).
OrbitRecord orbit(const PiElement& x0, std::size_t m);

/// ln of an arbitrary-precision positive integer, via its (mantissa, exponent)
/// decomposition so that very large values do not overflow.
double log_big(const BigInt& x);

struct ZStatistic {
  double exact;        // ln x_m - ln x_0
  double symbol_form;  // m ln 3 - (k_1 + ... + k_m) ln 2
};

/// Throws std::invalid_argument on an empty record.
ZStatistic z_statistic(const OrbitRecord& record);

}  // namespace collatz
