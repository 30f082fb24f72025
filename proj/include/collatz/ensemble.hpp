#pragma once

// The symbol measure (eps uniform, k_j i.i.d. geometric(1/2)) and the
// distribution it induces on image labels (r_m, delta_m).

#include "collatz/structure.hpp"
#include "collatz/types.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>

namespace collatz {

/// Mass 2^{-(K+1)} of a word; equals the natural density of its progression in Pi.
Rational sequence_probability(const SymbolSequence& seq);

/// #{x in progression, 1 <= x <= N} / #{x in Pi, x <= N}, by counting formulas.
/// Throws std::invalid_argument when K = 0 or N < 6 * 2^K.
Rational empirical_density(const SigmaProgression& progression, const BigInt& N);

struct ClassKey {
  BigInt r;
  Sign delta;

  friend bool operator==(const ClassKey&, const ClassKey&) = default;
  friend std::strong_ordering operator<=>(const ClassKey& a, const ClassKey& b) {
    if (const int c = cmp(a.r, b.r); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return to_int(a.delta) <=> to_int(b.delta);
  }
};

struct EnsembleEntry {
  Rational mass;
  std::uint64_t count = 0;
};

struct EnsembleTable {
  std::size_t m = 0;
  unsigned long k_cap = 0;
  std::map<ClassKey, EnsembleEntry> entries;
  Rational tail_mass;  // mass of words with some k_j > k_cap
  std::uint64_t sequences = 0;

  Rational enumerated_mass() const;
};

inline constexpr std::uint64_t kEnsembleBudget = 100'000'000;

/// Every word with all k_j <= k_cap, grouped by (r_m, delta_m). Throws
/// BudgetExceeded beyond kEnsembleBudget words. workers = 0 picks the
/// hardware concurrency; the table does not depend on it.
EnsembleTable enumerate_ensemble(std::size_t m, unsigned long k_cap, unsigned workers = 0);

struct EntropyReport {
  std::size_t m = 0;
  double H = 0;            // nats, over the normalized enumerated masses
  double lower_bound = 0;  // m ln 3 - (2 gamma0 + 7) ln m
  double gamma0 = 1;
  double tail_error_bound = 0;  // tail_mass (m ln 3 + ln 2)
  double ceiling = 0;           // ln 2 + m ln 3
  std::size_t classes = 0;
};

/// Throws std::invalid_argument on an empty table.
EntropyReport entropy(const EnsembleTable& table, double gamma0 = 1.0);

/// Number of compositions of k into m positive parts, binomial(k-1, m-1); 0 when k < m.
BigInt composition_count(std::size_t m, unsigned long k);

/// i with i / width <= theta_m < (i + 1) / width.
long theta_bucket(const SymbolSequence& seq, long width_inv = 10);

struct BucketReport {
  std::size_t m = 0;
  unsigned long k = 0;
  long width_inv = 10;
  std::uint64_t sequences = 0;  // |B_k|, both eps
  Rational max_mass;            // over all (r, delta, i)
  ClassKey worst_class{BigInt(0), Sign::plus};
  long worst_bucket = 0;
  Rational bound;          // 1 / (2 width 3^m)
  Rational slack;          // truncated mass; B_k is enumerated exactly, so 0
  Rational lattice_bound;  // 1 / (width 3^m) + 2^{-k}: lattice rounding and both eps counted
  bool kappa_distinct = false;

  bool within_bound() const { return max_mass <= bound + slack; }
  bool within_lattice_bound() const { return max_mass <= lattice_bound; }
  double ratio() const { return Rational(max_mass / bound).get_d(); }
};

/// Masses of Phi_m^{-1}(r, delta) ∩ A_{m,i} ∩ B_k over all (r, delta, i).
BucketReport bucket_mass_bound_check(std::size_t m, unsigned long k, long width_inv = 10);

struct PreimageScalingReport {
  std::size_t m = 0;
  unsigned long k_cap = 0;
  double heuristic = 0;         // 2^{2m} 3^{-m}
  double mean_all = 0;          // words per class, over all 2 * 3^m classes
  double mean_reachable = 0;    // words per reachable class
  double median_reachable = 0;
  std::uint64_t reachable = 0;
  BigInt unreachable;
};

PreimageScalingReport preimage_scaling_report(const EnsembleTable& table);

}  // namespace collatz
