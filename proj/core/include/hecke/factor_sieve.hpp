#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <hecke/eigen.hpp>
#include <hecke/poly.hpp>
#include <hecke/series.hpp>

namespace hecke {

// Exact factorization of one polynomial value: value = cofactor * prod p^e.
// All listed primes are <= the sieve bound (content primes above it appear
// explicitly and are prime); the cofactor is 1 or a single prime above the
// bound.
struct ValueFactorization {
  uint64_t n = 0;
  u128 value = 0;  // |P(n)|
  bool zero_value = false;
  bool negative = false;  // sign of P(n), recorded for diagnostics only
  std::vector<std::pair<uint64_t, int>> factors;
  u128 cofactor = 1;
};

struct FactorSieveOptions {
  // largest sieve prime we are willing to enumerate; sqrt(max |P(n)|)
  // must stay below this or the constructor reports the feasible X
  uint64_t sieve_prime_budget = 30000000;
  // candidate evaluations allowed per singular (p | disc) root lift
  uint64_t singular_work_cap = 1000000;
  bool verify_cofactors = false;  // 40-round Miller-Rabin on each cofactor
};

// Progression sieve over n in [1, X]: strikes n = r (mod p^k) for every
// lifted root r of P mod p^k, dividing values down to 1 or a single large
// prime. Construction does the root lifting; for_each streams the
// factorizations in ascending n. Throws CapacityError when values exceed
// 126 bits or the sieve-prime budget, naming the feasible X.
class FactorSieve {
 public:
  FactorSieve(const Poly& P, uint64_t X, const FactorSieveOptions& opt = {});

  void for_each(const std::function<void(const ValueFactorization&)>& fn) const;

  uint64_t x_max() const { return x_; }
  uint64_t sieve_bound() const { return sieve_bound_; }
  // primes whose singular-root lifting hit the work cap; their exponents
  // are completed by trial division when striking
  const std::vector<uint64_t>& capped_primes() const { return capped_; }

 private:
  struct Level {
    u128 modulus;  // p^k
    u128 root;
    uint64_t p;
    // deepest built level of a capped prime: finish the exponent by trial
    // division when striking here
    bool repair = false;
  };

  Poly reduced_;  // P / content
  uint64_t x_ = 0;
  uint64_t sieve_bound_ = 0;
  u128 content_ = 1;
  std::vector<std::pair<uint64_t, int>> content_factors_;
  u128 content_cofactor_ = 1;  // prime content part above the sieve bound
  std::vector<Level> levels_;  // sorted by (p, modulus)
  std::vector<uint64_t> capped_;
  bool narrow_ = false;
  FactorSieveOptions opt_;
};

void factor_values(const Poly& P, uint64_t X,
                   const std::function<void(const ValueFactorization&)>& fn,
                   const FactorSieveOptions& opt = {});

// Checkpointed partial sums of |lambda(|P(n)|)|, assembled multiplicatively
// from the factor sieve. n with P(n) = 0 are skipped and counted;
// |P(n)| = 1 contributes lambda(1) = 1.
struct EvalResult {
  SumSeries series;
  uint64_t zero_skipped = 0;
  uint64_t unit_terms = 0;
};

EvalResult eval_multiplicative(const Poly& P, uint64_t X, const EigenSource& src,
                               double checkpoint_ratio = 2.0);

// Multiplicative sum with a caller-supplied local weight f(p, e) in place of
// |lambda(p^e)| (the sieve-bound demos use indicator weights).
EvalResult eval_multiplicative_fn(const Poly& P, uint64_t X,
                                  const std::function<double(u128 p, int e)>& f,
                                  double checkpoint_ratio = 2.0);

enum class SquarefreeVerdict : uint8_t {
  squarefree_up_to_b = 0,
  has_small_square = 1,
  zero_value = 2,
};

// One-sided screen: has_small_square iff some p <= B has p^2 | P(n);
// squarefree_up_to_b may still hide a square of a prime above B.
struct SquarefreeScreen {
  uint64_t bound_b = 0;
  uint64_t x_max = 0;
  std::vector<SquarefreeVerdict> flags;  // flags[n-1] for n in [1, X]

  SquarefreeVerdict at(uint64_t n) const { return flags[n - 1]; }
  uint64_t count(SquarefreeVerdict v) const;
};

SquarefreeScreen squarefree_screen(const Poly& P, uint64_t X, uint64_t B);

}  // namespace hecke
