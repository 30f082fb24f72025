#pragma once

#include "collatz/structure.hpp"

#include <functional>
#include <random>
#include <vector>

namespace collatz::testing {

// Calls fn on every word (k_1..k_m, eps) with 1 <= m <= max_m and K <= max_K.
inline void for_each_word(std::size_t max_m, unsigned long max_K, const std::function<void(const SymbolSequence&)>& fn) {
  std::vector<unsigned long> ks;
  std::function<void(unsigned long)> rec = [&](unsigned long K) {
    if (!ks.empty()) {
      fn(SymbolSequence(ks, Sign::plus));
      fn(SymbolSequence(ks, Sign::minus));
    }
    if (ks.size() == max_m) return;
    for (unsigned long k = 1; K + k <= max_K; ++k) {
      ks.push_back(k);
      rec(K + k);
      ks.pop_back();
    }
  };
  rec(0);
}

inline SymbolSequence random_word(std::mt19937_64& rng, std::size_t max_m, unsigned long max_k) {
  std::uniform_int_distribution<std::size_t> len(1, max_m);
  std::uniform_int_distribution<unsigned long> sym(1, max_k);
  std::vector<unsigned long> ks(len(rng));
  for (auto& k : ks) k = sym(rng);
  return SymbolSequence(std::move(ks), rng() & 1 ? Sign::plus : Sign::minus);
}

}  // namespace collatz::testing
