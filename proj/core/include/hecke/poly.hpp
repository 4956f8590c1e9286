#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <hecke/errors.hpp>
#include <hecke/int128.hpp>

namespace hecke {

using BigInt = boost::multiprecision::cpp_int;

// Integer polynomial, constant term first, leading coefficient nonzero.
struct Poly {
  std::vector<BigInt> coeffs;
  BigInt disc;  // discriminant, (-1)^(d(d-1)/2) Res(P, P') / lc

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const BigInt& lead() const { return coeffs.back(); }

  BigInt eval(const BigInt& x) const;

  // Horner in signed 128-bit; valid whenever bound_abs(|n|) < 2^126,
  // which factor-sieve callers establish once per run.
  i128 eval_i128(int64_t n) const;

  // sum_i |c_i| X^i, an upper bound for |P(n)| on [-X, X]
  BigInt bound_abs(uint64_t X) const;

  // all coefficients fit int64 (enables the eval_i128 fast path)
  bool narrow_coeffs() const;

  std::string to_string() const;
};

// Validates shape (nonzero lead, degree >= 1) and computes the discriminant.
Poly make_poly(std::vector<BigInt> coeffs);

// Expression grammar: integer literals, x, + - * ^, parentheses.
// Throws errc::parse_error with a position, errc::degree_zero for constants.
Poly parse_poly(const std::string& text);

// Local root count rho(p) = #{a mod p : P(a) = 0}. Brute force below the
// crossover, gcd(x^p - x, P) above it. Throws errc::degenerate_prime when
// p divides every coefficient.
int rho(const Poly& P, uint64_t p);

// Forced-path variants, exposed so tests can cross-check them against
// each other on both sides of the crossover.
int rho_bruteforce(const Poly& P, uint64_t p);
int rho_gcd(const Poly& P, uint64_t p);

constexpr uint64_t kRhoBruteforceCrossover = 997;

struct RhoTable {
  // sorted by p; degenerate primes excluded and listed separately
  std::vector<std::pair<uint64_t, int>> entries;
  std::vector<uint64_t> degenerate;
  uint64_t p_max = 0;

  // mean of rho over listed primes (Chebotarev diagnostic; -> 1 for
  // irreducible P)
  double mean() const;
  int at(uint64_t p) const;  // throws errc::incomplete_table if missing
};

RhoTable rho_table(const Poly& P, uint64_t p_max);

// Distinct roots of P mod p (used by the factor sieve); brute force for
// small p, Cantor-Zassenhaus splitting of gcd(x^p - x, P) otherwise.
std::vector<uint64_t> roots_mod_p(const Poly& P, uint64_t p);

// Multiset of irreducible factor degrees of P mod p, ascending.
// Requires p unramified: p not dividing disc(P) or the leading coefficient.
struct FactorizationPattern {
  uint64_t p = 0;
  std::vector<int> degrees;

  std::string key() const;  // "1+1+2" style
};

FactorizationPattern factor_pattern(const Poly& P, uint64_t p);  // throws errc::ramified_prime

// Reducibility evidence for the CLI warning: a rational root, or every
// sampled pattern refining one fixed two-part degree split.
struct ReducibilityReport {
  bool rational_root_found = false;
  int64_t root_num = 0, root_den = 1;
  bool pattern_split_found = false;
  int split_lo = 0, split_hi = 0;
  bool suspicious() const { return rational_root_found || pattern_split_found; }
};

ReducibilityReport reducibility_scan(const Poly& P, int sample_primes = 5);

}  // namespace hecke
