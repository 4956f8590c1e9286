#include <doctest.h>

#include <random>

#include <hecke/arith.hpp>

#include "oracles.hpp"

using namespace hecke;

TEST_CASE("segmented primes match the plain sieve") {
  CHECK(segmented_primes(10).collect() == std::vector<uint64_t>{2, 3, 5, 7});
  CHECK(segmented_primes(100).count() == 25);
  CHECK(segmented_primes(1000000).count() == 78498);

  auto expected = oracles::plain_sieve(1000000);
  auto got = segmented_primes(1000000).collect();
  REQUIRE(got.size() == expected.size());
  CHECK(got == expected);
}

TEST_CASE("prime stream edge cases") {
  CHECK_THROWS_AS(segmented_primes(1), Error);
  CHECK(segmented_primes(2).collect() == std::vector<uint64_t>{2});
  // range iteration must agree with filtering the full stream
  std::vector<uint64_t> in_range;
  PrimeStream ps(100000);
  ps.for_each_in(50000, 60000, [&](uint64_t p) { in_range.push_back(p); });
  std::vector<uint64_t> filtered;
  for (uint64_t p : ps.collect())
    if (p >= 50000 && p < 60000) filtered.push_back(p);
  CHECK(in_range == filtered);
}

TEST_CASE("kronecker symbol: the mod-4 rule for d = -4") {
  CHECK(kronecker(-4, uint64_t(5)) == 1);
  CHECK(kronecker(-4, uint64_t(3)) == -1);
  CHECK(kronecker(-4, uint64_t(2)) == 0);
  for (uint64_t n = 1; n <= 10000; ++n) {
    int expect = n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
    CHECK(kronecker(-4, n) == expect);
  }
}

TEST_CASE("kronecker symbol: multiplicativity and periodicity") {
  std::mt19937_64 rng(20240601);
  for (int64_t d : {-8L, -4L, -3L, 5L, 8L, 12L, -20L}) {
    for (int trial = 0; trial < 300; ++trial) {
      uint64_t a = rng() % 10000 + 1, b = rng() % 10000 + 1;
      CHECK(kronecker(d, a * b) == kronecker(d, a) * kronecker(d, b));
    }
    uint64_t period = static_cast<uint64_t>(d < 0 ? -d : d);
    for (uint64_t n = 1; n <= 3 * period; ++n)
      CHECK(kronecker(d, n) == kronecker(d, n + period));
  }
}

TEST_CASE("kronecker agrees with Euler's criterion at odd primes") {
  auto primes = oracles::plain_sieve(500);
  std::mt19937_64 rng(7);
  for (uint64_t p : primes) {
    if (p == 2) continue;
    for (int t = 0; t < 8; ++t) {
      int64_t a = static_cast<int64_t>(rng() % (2 * p)) - static_cast<int64_t>(p);
      uint64_t am = ((a % (int64_t)p) + (int64_t)p) % (int64_t)p;
      int euler;
      if (am == 0)
        euler = 0;
      else
        euler = powmod64(am, (p - 1) / 2, p) == 1 ? 1 : -1;
      CHECK(kronecker(a, p) == euler);
    }
  }
}

TEST_CASE("fundamental discriminants") {
  for (int64_t d : {-4, -3, -8, -7, 5, 8, 12, 13, -20, -23})
    CHECK(is_fundamental_discriminant(d));
  for (int64_t d : {1, 2, 3, 4, -2, -5, -9, 9, 16, -12, 25})
    CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("sqrt_mod examples and canonical root") {
  CHECK(sqrt_mod(4, 5) == 2);  // -1 mod 5
  CHECK(sqrt_mod(2, 7) == 3);
  CHECK_THROWS_AS(sqrt_mod(3, 7), Error);
  CHECK_FALSE(try_sqrt_mod(3, 7).has_value());
  try {
    sqrt_mod(3, 7);
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_residue);
  }
}

TEST_CASE("sqrt_mod roundtrip on random residues") {
  std::mt19937_64 rng(20240601);
  auto primes = oracles::plain_sieve(100000);
  int done = 0;
  while (done < 1000) {
    uint64_t p = primes[rng() % primes.size()];
    if (p == 2) continue;
    uint64_t x = rng() % p;
    uint64_t a = mulmod64(x, x, p);
    uint64_t r = sqrt_mod(a, p);
    CHECK(mulmod64(r, r, p) == a);
    CHECK(r <= p / 2);
    ++done;
  }
}

TEST_CASE("cornacchia examples") {
  GaussianFactor g = cornacchia(5);
  CHECK(g.a == 1);
  CHECK(g.b == 2);
  g = cornacchia(13);
  CHECK(g.a == 3);
  CHECK(g.b == 2);
  CHECK_THROWS_AS(cornacchia(3), Error);
  CHECK_THROWS_AS(cornacchia(2), Error);
  try {
    cornacchia(3);
  } catch (const Error& e) {
    CHECK(e.code() == errc::inert);
  }
  try {
    cornacchia(2);
  } catch (const Error& e) {
    CHECK(e.code() == errc::ramified);
  }
}

TEST_CASE("cornacchia against exhaustive two-square search up to 10^4") {
  for (uint64_t p : oracles::plain_sieve(10000)) {
    if (p % 4 != 1) continue;
    GaussianFactor g = cornacchia(p);
    CHECK(g.a * g.a + g.b * g.b == static_cast<int64_t>(p));
    CHECK(g.a > 0);
    CHECK(g.a % 2 == 1);
    CHECK(g.b % 2 == 0);
    // exhaustive: the decomposition is unique up to order and sign
    bool found = false;
    for (int64_t a = 1; a * a <= static_cast<int64_t>(p); a += 2) {
      int64_t b2 = static_cast<int64_t>(p) - a * a;
      int64_t b = static_cast<int64_t>(std::sqrt(static_cast<double>(b2)));
      while (b * b > b2) --b;
      while ((b + 1) * (b + 1) <= b2) ++b;
      if (b * b == b2 && a == g.a && b == std::abs(g.b)) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("probable-prime test") {
  CHECK(is_probable_prime(2));
  CHECK(is_probable_prime(3));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(561));    // Carmichael
  CHECK_FALSE(is_probable_prime(29341));  // Carmichael
  CHECK(is_probable_prime(2147483647ULL));
  CHECK(is_probable_prime(1000000007ULL));
  CHECK_FALSE(is_probable_prime((u128)1000000007ULL * 1000000009ULL));
  for (uint64_t n = 2; n <= 20000; ++n)
    CHECK(is_probable_prime(n) == oracles::trial_is_prime(n));
}
