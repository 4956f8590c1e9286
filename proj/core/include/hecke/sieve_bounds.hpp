#pragma once

#include <cstdint>
#include <functional>

#include <hecke/poly.hpp>

namespace hecke {

enum class BoundKind { nair, classical_upper, classical_lower };

const char* bound_kind_name(BoundKind k);

// Right-hand side of an upper/lower sieve bound. For the nair kind,
// bound_value = X exp(sum_p rho(p)(f(p)-1)/p); the classical kinds carry
// the log of the Euler-style product in exponent_sum, so in every case
// bound_value = X * exp(exponent_sum).
struct BoundReport {
  uint64_t x = 0;
  BoundKind kind = BoundKind::nair;
  double exponent_sum = 0.0;
  double bound_value = 0.0;
};

using PrimeWeight = std::function<double(uint64_t p)>;  // f(p), nonnegative

// X exp(sum_{p<=X} rho(p)(f(p)-1)/p); degenerate primes are excluded by the
// table. Throws errc::incomplete_table if the table stops before X.
BoundReport nair_bound(const PrimeWeight& f, const RhoTable& rho, uint64_t X);

// X prod_{p<=X} (1 + (f(p)-1)/p)
BoundReport classical_product_bound(const PrimeWeight& f, uint64_t X,
                                    BoundKind kind = BoundKind::classical_upper);

// sum_{p<=y} f(p) log p compared against y: the lower-bound sieve
// applicability condition. The floor for "satisfied" is a harness knob,
// not a mathematical threshold.
struct LowerBoundCondition {
  double ratio = 0.0;
  bool satisfied = false;
  double floor = 0.1;
};

LowerBoundCondition lower_bound_condition(const PrimeWeight& f, uint64_t y, double floor = 0.1);

// The no-lower-bound-sieve demonstration: f(p) = [p = 3 mod 4] along
// P = x^2 + 1. The sum is identically zero, while the would-be sieve
// product X prod_{p = 1 mod 4} (1 - 2/p) stays large.
struct CounterexampleResult {
  uint64_t x = 0;
  double sum = 0.0;
  double pseudo_lower_bound = 0.0;
};

CounterexampleResult counterexample_demo(uint64_t X);

}  // namespace hecke
