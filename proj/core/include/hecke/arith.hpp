#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <hecke/errors.hpp>
#include <hecke/int128.hpp>

namespace hecke {

// Ascending stream of all primes <= limit. Generation is segmented
// (fixed 2^20-entry segments), so iterating keeps memory bounded no
// matter how large the limit is. The object itself only stores the
// limit and the base primes <= sqrt(limit); it is immutable and safe
// to share across threads.
class PrimeStream {
 public:
  explicit PrimeStream(uint64_t limit);

  uint64_t limit() const { return limit_; }

  // Calls fn(p) for every prime p <= limit, in ascending order.
  void for_each(const std::function<void(uint64_t)>& fn) const;

  // Calls fn(p) for every prime in [lo, hi) in ascending order.
  void for_each_in(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn) const;

  uint64_t count() const;
  std::vector<uint64_t> collect() const;  // materializes; small limits only

  const std::vector<uint32_t>& base_primes() const { return base_; }

  static constexpr uint64_t kSegmentSize = uint64_t(1) << 20;

 private:
  uint64_t limit_;
  std::vector<uint32_t> base_;  // primes <= sqrt(limit)
};

// Throws errc::empty_domain if limit < 2.
PrimeStream segmented_primes(uint64_t limit);

// Kronecker symbol (d | n), total in both arguments.
int kronecker(int64_t d, uint64_t n);
int kronecker(int64_t d, i128 n);

bool is_fundamental_discriminant(int64_t d);

// Square root mod an odd prime (Tonelli-Shanks), canonical root <= p/2.
// Nullopt when a is a quadratic non-residue.
std::optional<uint64_t> try_sqrt_mod(uint64_t a, uint64_t p);
uint64_t sqrt_mod(uint64_t a, uint64_t p);  // throws errc::non_residue

// Decomposition p = a^2 + b^2 with a odd, b even, a > 0.
struct GaussianFactor {
  int64_t a = 0;
  int64_t b = 0;
  uint64_t p = 0;
};

// Throws errc::inert for p = 3 mod 4 and errc::ramified for p = 2.
GaussianFactor cornacchia(uint64_t p);

// Miller-Rabin with deterministic 64-bit bases plus fixed random rounds
// for wider inputs.
bool is_probable_prime(u128 n, int rounds = 40);

}  // namespace hecke
