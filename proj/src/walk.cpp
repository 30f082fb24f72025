#include "collatz/walk.hpp"

#include <string>

namespace collatz {

KDecomposition k_decompose(unsigned long k) {
  const Sign delta = delta_from_k(k);
  const BigInt p = pow2(k);
  BigInt a1 = (p - to_int(delta)) / 3;
  BigInt a2 = (a1 - 1) / 2;
  BigInt a3;
  const auto g = static_cast<int>(mpz_fdiv_q_ui(a3.get_mpz_t(), a2.get_mpz_t(), 3));
  return {k, delta, std::move(a1), std::move(a2), std::move(a3), g};
}

RDecomposition r_decompose(const BigInt& r) {
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  BigInt r1;
  const auto h = static_cast<int>(mpz_fdiv_q_ui(r1.get_mpz_t(), r.get_mpz_t(), 3));
  return {r, h, std::move(r1)};
}

BigInt c_coefficient(unsigned long k, Sign delta, Sign delta_prev) {
  if (delta != delta_from_k(k)) {
    throw std::invalid_argument("delta " + to_string(delta) + " is not forced by k = " + std::to_string(k));
  }
  const BigInt a1 = (pow2(k) - to_int(delta)) / 3;
  const BigInt twice = a1 * to_int(delta) - to_int(delta_prev);
  // a1 is odd, so a1 * delta - delta_prev is even
  return -(twice / 2);
}

bool admissible_k(const BigInt& r, Sign delta, Sign delta_prev, unsigned long k) {
  if (k == 0 || r < 0 || delta_from_k(k) != delta) return false;
  const int h = r_decompose(r).h;
  const int g = k_decompose(k).g;
  const int flip_term = (1 - to_int(delta_prev) * to_int(delta)) / 2;
  return (h + g + flip_term) % 3 == 0;
}

BigInt backward_step(const BigInt& r, Sign delta, unsigned long k, Sign delta_prev, std::size_t m) {
  if (m == 0) throw std::invalid_argument("backward step needs m >= 1");
  if (r < 0 || r >= pow3(m)) throw std::invalid_argument("r out of [0, 3^m)");
  if (!admissible_k(r, delta, delta_prev, k)) {
    throw std::invalid_argument("inadmissible (r, delta, delta_prev, k) for the backward step");
  }
  BigInt numer = pow2(k) * r - c_coefficient(k, delta, delta_prev);
  if (!mpz_divisible_ui_p(numer.get_mpz_t(), 3)) {
    throw VerificationFailure("admissible step with 2^k r - c not divisible by 3");
  }
  BigInt r_prev = numer / 3;
  mpz_fdiv_r(r_prev.get_mpz_t(), r_prev.get_mpz_t(), pow3(m - 1).get_mpz_t());
  return r_prev;
}

WalkPath walk_path(const SymbolSequence& seq) {
  WalkPath path{seq, {{BigInt(0), seq.eps()}}};
  StructurePair pair = base_case(seq.ks().front(), seq.eps());
  for (std::size_t j = 1; j <= seq.m(); ++j) {
    if (j > 1) pair = extend(pair, seq.ks()[j - 1]);
    const WalkState& prev = path.states.back();
    WalkState next{pair.lambda.r, pair.lambda.delta};
    const unsigned long k = seq.ks()[j - 1];
    if (!admissible_k(next.r, next.delta, prev.delta, k)) {
      throw VerificationFailure("realized step " + std::to_string(j) + " is not admissible");
    }
    if (backward_step(next.r, next.delta, k, prev.delta, j) != prev.r) {
      throw VerificationFailure("backward step " + std::to_string(j) + " does not return the previous state");
    }
    path.states.push_back(std::move(next));
  }
  return path;
}

namespace {

std::vector<Sign> deltas_with_eps(const SymbolSequence& seq) {
  std::vector<Sign> d{seq.eps()};
  for (auto k : seq.ks()) d.push_back(delta_from_k(k));
  return d;
}

}  // namespace

Rational theta_value(const SymbolSequence& seq) {
  const auto d = deltas_with_eps(seq);
  // theta_j = numer_j / 2^{K_j}; numer_j = 3 numer_{j-1} + c_j 2^{K_{j-1}}
  BigInt numer = 0;
  unsigned long K = 0;
  for (std::size_t j = 1; j <= seq.m(); ++j) {
    const unsigned long k = seq.ks()[j - 1];
    numer = 3 * numer + c_coefficient(k, d[j], d[j - 1]) * pow2(K);
    K += k;
  }
  Rational theta(numer, pow2(K));
  theta.canonicalize();
  return theta;
}

ThetaDecomposition theta_decompose(const SymbolSequence& seq) {
  const StructurePair pair = build(seq);
  const std::size_t m = seq.m();
  const auto d = deltas_with_eps(seq);

  Rational theta = 0;
  unsigned long tail = 0;  // k_s + ... + k_m
  for (std::size_t s = m; s >= 1; --s) {
    tail += seq.ks()[s - 1];
    theta += Rational(pow3(m - s) * c_coefficient(seq.ks()[s - 1], d[s], d[s - 1]), pow2(tail));
  }
  theta.canonicalize();

  Rational rho(pair.lambda.offset, pow3(m));
  rho.canonicalize();
  Rational kappa(pair.sigma.q, pow2(pair.sigma.K));
  kappa.canonicalize();
  if (rho != kappa + theta / Rational(pow3(m))) {
    throw VerificationFailure("rho != kappa + theta / 3^m");
  }
  return {std::move(rho), std::move(kappa), std::move(theta)};
}

}  // namespace collatz
