#include "collatz/ensemble.hpp"

#include "collatz/congruence.hpp"
#include "collatz/parallel.hpp"
#include "collatz/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace collatz {

Rational sequence_probability(const SymbolSequence& seq) { return dyadic(1, seq.total() + 1); }

namespace {

// #{x in [1, N] : x = 1 or 5 (mod 6)}
BigInt count_pi(const BigInt& N) {
  BigInt a, b;
  const BigInt n5 = N + 5, n1 = N + 1;
  mpz_fdiv_q_ui(a.get_mpz_t(), n5.get_mpz_t(), 6);
  mpz_fdiv_q_ui(b.get_mpz_t(), n1.get_mpz_t(), 6);
  return a + b;
}

}  // namespace

Rational empirical_density(const SigmaProgression& progression, const BigInt& N) {
  if (progression.K == 0) throw std::invalid_argument("density needs a progression with K >= 1");
  const BigInt step = 6 * progression.modulus();
  if (N < step) throw std::invalid_argument("N must be at least 6 * 2^K");
  const BigInt first = progression.member(0);
  BigInt members = 0;
  if (N >= first) {
    mpz_fdiv_q(members.get_mpz_t(), BigInt(N - first).get_mpz_t(), step.get_mpz_t());
    members += 1;
    if (first < 1) members -= 1;  // x = -1 is not a positive member
  }
  Rational d(members, count_pi(N));
  d.canonicalize();
  return d;
}

Rational EnsembleTable::enumerated_mass() const {
  Rational total = 0;
  for (const auto& [key, e] : entries) total += e.mass;
  return total;
}

namespace {

struct Accum {
  BigInt numer;  // in units of 2^{-(m k_cap + 1)}
  std::uint64_t count = 0;
};

struct Enumerator {
  std::size_t m;
  unsigned long k_cap;
  unsigned long exponent;  // m k_cap + 1
  std::vector<BigInt> unit;  // unit[K] = 2^{exponent - K - 1}
  std::vector<i128> pow3;

  Enumerator(std::size_t m_, unsigned long k_cap_) : m(m_), k_cap(k_cap_), exponent(m_ * k_cap_ + 1) {
    for (unsigned long K = 0; K <= m * k_cap; ++K) unit.push_back(pow2(exponent - K - 1));
  }
};

// Fixed-width walk: labels packed as 2 r + (delta == +1).
void descend_fixed(const Enumerator& en, std::size_t j, i128 offset, Sign delta, unsigned long K,
                   std::unordered_map<std::uint64_t, Accum>& out) {
  if (j == en.m) {
    const i128 r = offset % en.pow3[en.m];
    auto& a = out[static_cast<std::uint64_t>(r) * 2 + (delta == Sign::plus ? 1 : 0)];
    mpz_add(a.numer.get_mpz_t(), a.numer.get_mpz_t(), en.unit[K].get_mpz_t());
    ++a.count;
    return;
  }
  for (unsigned long k = 1; k <= en.k_cap; ++k) {
    const auto step = detail::forward_step_fixed(offset, delta, en.pow3[j], k);
    descend_fixed(en, j + 1, step.next_offset, step.next_delta, K + k, out);
  }
}

void descend_big(const Enumerator& en, std::size_t j, const BigInt& offset, Sign delta, unsigned long K,
                 std::map<ClassKey, Accum>& out) {
  if (j == en.m) {
    auto& a = out[ClassKey{BigInt(offset % pow3(en.m)), delta}];
    a.numer += en.unit[K];
    ++a.count;
    return;
  }
  for (unsigned long k = 1; k <= en.k_cap; ++k) {
    const ForwardStep step = forward_step(offset, delta, j, k);
    descend_big(en, j + 1, step.next_offset, step.next_delta, K + k, out);
  }
}

}  // namespace

EnsembleTable enumerate_ensemble(std::size_t m, unsigned long k_cap, unsigned workers) {
  if (m == 0 || k_cap == 0) throw std::invalid_argument("ensemble needs m >= 1 and k_cap >= 1");
  const double words = 2.0 * std::pow(static_cast<double>(k_cap), static_cast<double>(m));
  if (words > static_cast<double>(kEnsembleBudget)) {
    throw BudgetExceeded("ensemble of " + std::to_string(words) + " words exceeds the budget");
  }
  Enumerator en(m, k_cap);
  const bool fixed = detail::fits_fixed_width(m, k_cap) && m <= 38;
  if (fixed) {
    i128 p = 1;
    for (std::size_t j = 0; j <= m; ++j, p *= 3) en.pow3.push_back(p);
  }

  // one task per (eps, k_1)
  const std::size_t tasks = 2 * k_cap;
  std::vector<std::map<ClassKey, Accum>> partial(tasks);
  parallel_for(tasks, workers, [&](std::size_t t) {
    const Sign eps = t < k_cap ? Sign::plus : Sign::minus;
    const unsigned long k1 = t % k_cap + 1;
    if (fixed) {
      std::unordered_map<std::uint64_t, Accum> local;
      const auto step = detail::forward_step_fixed(0, eps, 1, k1);
      descend_fixed(en, 1, step.next_offset, step.next_delta, k1, local);
      for (auto& [packed, acc] : local) {
        partial[t].emplace(ClassKey{BigInt(static_cast<unsigned long>(packed / 2)), packed % 2 ? Sign::plus : Sign::minus},
                           std::move(acc));
      }
    } else {
      const ForwardStep step = forward_step(0, eps, 0, k1);
      descend_big(en, 1, step.next_offset, step.next_delta, k1, partial[t]);
    }
  });

  std::map<ClassKey, Accum> merged;
  for (auto& part : partial) {
    for (auto& [key, acc] : part) {
      auto& dst = merged[key];
      dst.numer += acc.numer;
      dst.count += acc.count;
    }
  }

  EnsembleTable table;
  table.m = m;
  table.k_cap = k_cap;
  const BigInt denom = pow2(en.exponent);
  for (auto& [key, acc] : merged) {
    Rational mass(acc.numer, denom);
    mass.canonicalize();
    table.sequences += acc.count;
    table.entries.emplace(key, EnsembleEntry{std::move(mass), acc.count});
  }
  Rational kept = 1 - dyadic(1, k_cap);
  Rational kept_m = 1;
  for (std::size_t j = 0; j < m; ++j) kept_m *= kept;
  table.tail_mass = 1 - kept_m;
  if (table.enumerated_mass() != kept_m) throw VerificationFailure("ensemble mass is not conserved");
  return table;
}

EntropyReport entropy(const EnsembleTable& table, double gamma0) {
  if (table.entries.empty()) throw std::invalid_argument("entropy of an empty table");
  const Rational total = table.enumerated_mass();
  double H = 0;
  for (const auto& [key, e] : table.entries) {
    const double p = Rational(e.mass / total).get_d();
    if (p > 0) H -= p * std::log(p);
  }
  const double m = static_cast<double>(table.m);
  const double ln3 = std::log(3.0);
  EntropyReport rep;
  rep.m = table.m;
  rep.H = H;
  rep.gamma0 = gamma0;
  rep.lower_bound = m * ln3 - (2 * gamma0 + 7) * std::log(m);
  rep.ceiling = std::log(2.0) + m * ln3;
  rep.tail_error_bound = table.tail_mass.get_d() * rep.ceiling;
  rep.classes = table.entries.size();
  return rep;
}

BigInt composition_count(std::size_t m, unsigned long k) {
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (k < m) return 0;
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), k - 1, m - 1);
  return c;
}

long theta_bucket(const SymbolSequence& seq, long width_inv) {
  if (width_inv <= 0) throw std::invalid_argument("bucket width must be positive");
  const Rational scaled = theta_value(seq) * width_inv;
  BigInt i;
  mpz_fdiv_q(i.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return i.get_si();
}

namespace {

template <typename Fn>
void for_each_composition(std::size_t m, unsigned long k, std::vector<unsigned long>& parts, Fn&& fn) {
  if (parts.size() + 1 == m) {
    parts.push_back(k);
    fn(parts);
    parts.pop_back();
    return;
  }
  const std::size_t left = m - parts.size() - 1;  // parts still needed after this one
  for (unsigned long first = 1; first + left <= k; ++first) {
    parts.push_back(first);
    for_each_composition(m, k - first, parts, fn);
    parts.pop_back();
  }
}

}  // namespace

BucketReport bucket_mass_bound_check(std::size_t m, unsigned long k, long width_inv) {
  if (m == 0 || k < m) throw std::invalid_argument("bucket check needs 1 <= m <= k");
  if (width_inv <= 0) throw std::invalid_argument("bucket width must be positive");
  if (composition_count(m, k) > 5'000'000) throw BudgetExceeded("B_k too large to enumerate");

  struct Key {
    ClassKey cls;
    long bucket;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::uint64_t> counts;
  BucketReport rep;
  rep.m = m;
  rep.k = k;
  rep.width_inv = width_inv;
  rep.kappa_distinct = true;

  for (Sign eps : {Sign::plus, Sign::minus}) {
    std::vector<BigInt> qs;
    std::vector<unsigned long> parts;
    for_each_composition(m, k, parts, [&](const std::vector<unsigned long>& ks) {
      const SymbolSequence seq(ks, eps);
      const StructurePair pair = build(seq);
      const Rational scaled = theta_value(seq) * width_inv;
      BigInt i;
      mpz_fdiv_q(i.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      ++counts[Key{ClassKey{pair.lambda.r, pair.lambda.delta}, i.get_si()}];
      qs.push_back(pair.sigma.q);
      ++rep.sequences;
    });
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) rep.kappa_distinct = false;
  }

  std::uint64_t worst = 0;
  for (const auto& [key, n] : counts) {
    if (n > worst) {
      worst = n;
      rep.worst_class = key.cls;
      rep.worst_bucket = key.bucket;
    }
  }
  rep.max_mass = Rational(BigInt(static_cast<unsigned long>(worst)), pow2(k + 1));
  rep.max_mass.canonicalize();
  rep.bound = Rational(1, BigInt(2 * width_inv) * pow3(m));
  rep.bound.canonicalize();
  rep.slack = 0;
  rep.lattice_bound = Rational(1, BigInt(width_inv) * pow3(m)) + dyadic(1, k);
  return rep;
}

PreimageScalingReport preimage_scaling_report(const EnsembleTable& table) {
  PreimageScalingReport rep;
  rep.m = table.m;
  rep.k_cap = table.k_cap;
  const double m = static_cast<double>(table.m);
  rep.heuristic = std::pow(4.0, m) / std::pow(3.0, m);
  const BigInt classes = 2 * pow3(table.m);
  rep.reachable = table.entries.size();
  rep.unreachable = classes - BigInt(static_cast<unsigned long>(rep.reachable));
  rep.mean_all = static_cast<double>(table.sequences) / classes.get_d();
  std::vector<std::uint64_t> counts;
  counts.reserve(table.entries.size());
  for (const auto& [key, e] : table.entries) counts.push_back(e.count);
  if (!counts.empty()) {
    rep.mean_reachable = static_cast<double>(table.sequences) / static_cast<double>(counts.size());
    std::sort(counts.begin(), counts.end());
    const std::size_t n = counts.size();
    rep.median_reachable = n % 2 ? static_cast<double>(counts[n / 2])
                                 : 0.5 * static_cast<double>(counts[n / 2 - 1] + counts[n / 2]);
  }
  return rep;
}

}  // namespace collatz
