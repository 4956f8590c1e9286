#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <hecke/forms.hpp>
#include <hecke/poly.hpp>
#include <hecke/series.hpp>

namespace hecke {

// The 2-dimensional irreducible representation of D_{2n} (order 2n) with
// character 2 cos(2 pi a j / n) on rotations, 0 on reflections.
struct DihedralSpec {
  uint64_t n = 3;
  uint64_t a = 1;  // 1 <= a <= (n-1)/2
};

void validate(const DihedralSpec& spec);  // throws errc::domain_error

// Average of |chi|^power over the 2n group elements; power in {1, 2}.
// The power-2 average is evaluated exactly (root-of-unity sums are
// integers) and equals 1 for every irreducible spec.
double dihedral_char_average(const DihedralSpec& spec, int power);

// Frobenius statistics: how often each factorization pattern occurs among
// unramified primes p <= X.
struct ClassFrequencies {
  uint64_t x_max = 0;
  uint64_t sample_size = 0;       // unramified primes counted
  uint64_t ramified_skipped = 0;  // p | disc or p | lc
  uint64_t degenerate_skipped = 0;
  std::vector<std::pair<std::string, uint64_t>> counts;  // pattern key -> count

  double freq(const std::string& pattern_key) const;
};

ClassFrequencies chebotarev_stats(const Poly& P, uint64_t X);

// Number of ideals of norm n in the quadratic order of discriminant d,
// as the divisor sum of kronecker(d, .).
int64_t ideal_count_rF(int64_t d, uint64_t n);

// Checkpointed sum_{p<=X} chi(p) for a nontrivial real character.
// Throws errc::domain_error for the trivial character.
SumSeries char_prime_sum(const CharSpec& chi, uint64_t X, double checkpoint_ratio = 2.0);

// Screened ideal-count sum: over n <= X passing the squarefree screen,
// add the number of ideals of norm |P(n)| in the quadratic order of
// discriminant d, assembled from the factor sieve. This is the lower
// bound the noncuspidal regime guarantees for the correlation sum.
struct NoncuspidalLowerBound {
  double total = 0.0;
  uint64_t terms = 0;          // n that passed the screen
  uint64_t screened_out = 0;   // has_small_square
  uint64_t zero_values = 0;
  SumSeries series;            // checkpointed running total
};

NoncuspidalLowerBound noncuspidal_lower_bound(const Poly& P, int64_t d, uint64_t X, uint64_t B,
                                              double checkpoint_ratio = 2.0);

}  // namespace hecke
