#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <hecke/arith.hpp>
#include <hecke/errors.hpp>

namespace hecke {

// Real Dirichlet character: trivial (d = 1) or the Kronecker symbol of a
// fundamental discriminant d.
struct CharSpec {
  int64_t d = 1;

  bool trivial() const { return d == 1; }
  uint64_t modulus() const { return d == 1 ? 1 : static_cast<uint64_t>(d < 0 ? -d : d); }
  int at(u128 n) const { return trivial() ? 1 : kronecker(d, (i128)n); }
};

// One cusp form per weight in this range, so the weight determines the form.
struct Level1Holomorphic {
  int weight = 12;  // one of 12, 16, 18, 20, 22, 26
};

// The weight-2 level-32 CM form attached to y^2 = x^3 - x, induced from a
// Hecke character of Q(i).
struct CMGaussian {};

// Isobaric sum psi1 + psi2 of two unitary characters; lambda(p) = psi1(p) + psi2(p).
struct Isobaric {
  CharSpec psi1, psi2;
};

// Ind 1 from the quadratic field of discriminant d; lambda(n) counts ideals
// of norm n.
struct TrivialQuadratic {
  int64_t d = -4;
};

using FormSpec = std::variant<Level1Holomorphic, CMGaussian, Isobaric, TrivialQuadratic>;

void validate(const FormSpec& spec);  // throws errc::domain_error

// lambda(p) has an O(log p) closed form (no table needed)
bool closed_form_at_primes(const FormSpec& spec);

// exact integer coefficients a(n) exist alongside the normalized values
bool has_raw_integers(const FormSpec& spec);

// primes where the local factor degenerates; lambda(p^e) = lambda(p)^e there
bool is_ramified_prime(const FormSpec& spec, uint64_t p);

// Stable text form used by the CLI --form flag and the cache file:
//   level1:12   cm-gaussian   isobaric:1,-4   trivial-quadratic:-4
std::string form_token(const FormSpec& spec);
FormSpec parse_form(const std::string& token);

}  // namespace hecke
