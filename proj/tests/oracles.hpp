#pragma once

// Test-side oracles, kept independent of the library code paths they
// check: plain sieves, exhaustive searches, direct series products.

#include <cstdint>
#include <vector>

#include <hecke/poly.hpp>

namespace oracles {

using hecke::BigInt;
using hecke::i128;
using hecke::u128;

// plain (non-segmented) sieve of Eratosthenes
std::vector<uint64_t> plain_sieve(uint64_t limit);

// trial-division primality
bool trial_is_prime(uint64_t n);

// tau(n) for n <= len via the product q * prod_m (1 - q^m)^24, multiplied
// out one factor at a time in exact arithmetic
std::vector<BigInt> tau_series(uint64_t len);

// exact coefficients of the weight-k level-1 eigenform (k in the
// one-dimensional range), from tau_series and direct sigma sums
std::vector<BigInt> eigenform_series(int weight, uint64_t len);

// #E(F_p) for y^2 = x^3 - x, counted point by point (affine + infinity)
uint64_t ec_point_count(uint64_t p);

// #{ideals of Z[i] of norm m} by lattice enumeration: r2(m) / 4
int64_t gaussian_ideal_count(uint64_t m);

// sum_{n<=X} d(n) by the hyperbola identity
int64_t divisor_sum_hyperbola(uint64_t X);

// d(n) by trial division
int64_t divisor_count(uint64_t n);

// distinct roots of P mod p by exhaustive evaluation
int root_count_bruteforce(const hecke::Poly& P, uint64_t p);

// resultant by a subresultant-style pseudo-remainder sequence (checks the
// Bareiss determinant route in the library)
BigInt resultant_prs(std::vector<BigInt> A, std::vector<BigInt> B);

// exact factorization of v by trial division (v < 2^126)
std::vector<std::pair<u128, int>> trial_factor(u128 v);

}  // namespace oracles
