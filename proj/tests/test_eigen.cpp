#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include <hecke/eigen.hpp>
#include <hecke/eigen_cache.hpp>
#include <hecke/poly.hpp>

#include "oracles.hpp"

using namespace hecke;

TEST_CASE("tau table matches the direct power-series oracle") {
  EigenTable t = build_table(Level1Holomorphic{12}, 2000);
  auto tau = oracles::tau_series(2000);
  REQUIRE(t.raw_len >= 1000);
  const int64_t expected_first[10] = {1,      -24,    252,    -1472,   4830,
                                      -6048,  -16744, 84480,  -113643, -115920};
  for (int n = 1; n <= 10; ++n) CHECK(t.raw[n] == expected_first[n - 1]);
  for (uint64_t n = 1; n <= t.raw_len; ++n) CHECK(BigInt(t.raw[n]) == tau[n]);
}

TEST_CASE("weight shifts match the series oracle and classical a(2)") {
  const std::pair<int, int64_t> a2[] = {{16, 216}, {18, -528}, {20, 456}, {22, -288}, {26, -48}};
  for (auto [k, expect_a2] : a2) {
    EigenTable t = build_table(Level1Holomorphic{k}, 300);
    REQUIRE(t.raw_len >= 20);
    CHECK(t.raw[1] == 1);
    CHECK(t.raw[2] == expect_a2);
    auto oracle = oracles::eigenform_series(k, 60);
    for (uint64_t n = 1; n <= std::min<uint64_t>(60, t.raw_len); ++n)
      CHECK(BigInt(t.raw[n]) == oracle[n]);
  }
}

TEST_CASE("lambda doubles track the exact coefficients (integrality)") {
  for (int k : {12, 16}) {
    EigenTable t = build_table(Level1Holomorphic{k}, 5000);
    double half = (k - 1) / 2.0;
    for (uint64_t n = 1; n <= t.raw_len; ++n) {
      double recon = t.lambda[n] * std::pow(static_cast<double>(n), half);
      double raw = static_cast<double>(t.raw[n]);
      double tol = 1e-6 * std::max(1.0, std::fabs(raw));
      CHECK(std::fabs(recon - raw) <= tol);
    }
  }
}

TEST_CASE("multiplicativity via smallest-prime-factor splitting") {
  EigenTable t = build_table(Level1Holomorphic{12}, 200000);
  // decompose n = p^e m with p the smallest prime factor
  std::vector<uint32_t> spf(200001, 0);
  for (uint32_t i = 2; i <= 200000; ++i)
    if (spf[i] == 0)
      for (uint64_t j = i; j <= 200000; j += i)
        if (spf[j] == 0) spf[j] = i;
  double worst = 0;
  for (uint64_t n = 2; n <= 200000; ++n) {
    uint64_t p = spf[n], m = n;
    while (m % p == 0) m /= p;
    if (m == 1) continue;
    worst = std::max(worst, std::fabs(t.lambda[n] - t.lambda[n / m] * t.lambda[m]));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("Ramanujan bound at primes") {
  EigenTable t = build_table(Level1Holomorphic{12}, 200000);
  PrimeStream ps(200000);
  ps.for_each([&](uint64_t p) { CHECK(std::fabs(t.lambda[p]) <= 2.0 + 1e-12); });
}

TEST_CASE("series budget capacity error reports the feasible length") {
  BuildOptions opt;
  opt.series_budget = 1000;
  try {
    build_table(Level1Holomorphic{12}, 2000, opt);
    FAIL_CHECK("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.feasible() == 1000);
  }
  opt.eisenstein_budget = 500;
  CHECK_THROWS_AS(build_table(Level1Holomorphic{16}, 800, opt), CapacityError);
}

TEST_CASE("CM table against exhaustive point counting up to 2000") {
  EigenTable t = build_table(CMGaussian{}, 2000);
  for (uint64_t p : oracles::plain_sieve(2000)) {
    int64_t ap = static_cast<int64_t>(p) + 1 - static_cast<int64_t>(oracles::ec_point_count(p));
    CHECK(t.raw[p] == ap);
  }
}

TEST_CASE("CM eigenvalues vanish exactly at inert primes") {
  EigenTable t = build_table(CMGaussian{}, 100000);
  PrimeStream ps(100000);
  ps.for_each([&](uint64_t p) {
    if (p % 4 == 3) {
      CHECK(t.raw[p] == 0);
      CHECK(t.lambda[p] == 0.0);
    }
  });
  CHECK(t.raw[2] == 0);
}

TEST_CASE("CM closed form agrees with the table and the spec examples") {
  EigenTable t = build_table(CMGaussian{}, 5000);
  CHECK(lambda_at_prime(CMGaussian{}, 5) == doctest::Approx(-2.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(lambda_at_prime(CMGaussian{}, 3) == 0.0);
  CHECK(oracles::ec_point_count(5) == 8);  // a_5 = 5 + 1 - 8 = -2
  CHECK(oracles::ec_point_count(3) == 4);
  PrimeStream ps(5000);
  ps.for_each([&](uint64_t p) {
    CHECK(lambda_at_prime(CMGaussian{}, p) == doctest::Approx(t.lambda[p]).epsilon(1e-12));
  });
}

TEST_CASE("CM multiplicativity is exact in the integers") {
  EigenTable t = build_table(CMGaussian{}, 20000);
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 2000; ++trial) {
    uint64_t m = rng() % 140 + 2, n = rng() % 140 + 2;
    if (std::gcd(m, n) != 1 || m * n > 20000) continue;
    CHECK(t.raw[m * n] == t.raw[m] * t.raw[n]);
  }
}

TEST_CASE("isobaric 1 + 1 is the divisor function") {
  EigenTable t = build_table(Isobaric{CharSpec{1}, CharSpec{1}}, 10000);
  CHECK(t.lambda[12] == 6.0);
  for (uint64_t n = 1; n <= 10000; ++n)
    CHECK(t.lambda[n] == static_cast<double>(oracles::divisor_count(n)));
}

TEST_CASE("trivial-quadratic table counts Gaussian ideals") {
  EigenTable t = build_table(TrivialQuadratic{-4}, 10000);
  CHECK(t.lambda[25] == 3.0);
  for (uint64_t n = 1; n <= 10000; ++n)
    CHECK(t.lambda[n] == static_cast<double>(oracles::gaussian_ideal_count(n)));
}

TEST_CASE("extend_prime_power examples and domain errors") {
  CHECK(extend_prime_power(2.0, 2, false) == 3.0);
  CHECK(extend_prime_power(0.0, 2, false) == -1.0);
  CHECK(extend_prime_power(1.5, 0, false) == 1.0);
  // tau(4) from tau(2): lambda(2) = -24 / 2^5.5
  double l2 = -24.0 / std::pow(2.0, 5.5);
  double l4 = extend_prime_power(l2, 2, false);
  CHECK(l4 == doctest::Approx(-1472.0 / std::pow(2.0, 11.0)).epsilon(1e-12));
  CHECK(extend_prime_power(0.5, 3, true) == 0.125);
  CHECK_THROWS_AS(extend_prime_power(2.5, 2, false), Error);
  CHECK_THROWS_AS(extend_prime_power(1.5, 2, true), Error);
  CHECK_THROWS_AS(extend_prime_power(1.0, -1, false), Error);
}

TEST_CASE("tables are consistent with the Hecke recurrence at prime powers") {
  // trivial central character: the plain recurrence must reproduce the table
  for (const FormSpec spec :
       {FormSpec{Level1Holomorphic{12}}, FormSpec{CMGaussian{}},
        FormSpec{Isobaric{CharSpec{1}, CharSpec{1}}}}) {
    EigenTable t = build_table(spec, 50000);
    PrimeStream ps(250);
    ps.for_each([&](uint64_t p) {
      bool ram = is_ramified_prime(spec, p);
      for (uint64_t pe = p, e = 1; pe <= t.n_max; pe *= p, ++e) {
        double expect = extend_prime_power(t.lambda[p], static_cast<int>(e), ram);
        CHECK(t.lambda[pe] == doctest::Approx(expect).epsilon(1e-9));
        if (pe > t.n_max / p) break;
      }
    });
  }
  // nontrivial central character: the recurrence only applies at split
  // primes; the twisted extension comes from EigenSource
  EigenTable tq = build_table(TrivialQuadratic{-4}, 50000);
  EigenSource src(TrivialQuadratic{-4});
  PrimeStream ps(250);
  ps.for_each([&](uint64_t p) {
    for (uint64_t pe = p, e = 1; pe <= tq.n_max; pe *= p, ++e) {
      if (kronecker(-4, p) == 1) {
        double expect = extend_prime_power(tq.lambda[p], static_cast<int>(e), false);
        CHECK(tq.lambda[pe] == doctest::Approx(expect).epsilon(1e-9));
      }
      CHECK(tq.lambda[pe] ==
            doctest::Approx(src.lambda_prime_power(p, static_cast<int>(e))).epsilon(1e-9));
      if (pe > tq.n_max / p) break;
    }
  });
}

TEST_CASE("angle series") {
  EigenTable t = build_table(Level1Holomorphic{12}, 10000);
  AngleSeries as = angles(t, 10000);
  CHECK(as.entries.size() == oracles::plain_sieve(10000).size());
  for (auto [p, a] : as.entries) {
    CHECK(a >= 0.0);
    CHECK(a <= 0.5);
    CHECK(2.0 * std::cos(2.0 * M_PI * a) == doctest::Approx(t.lambda[p]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(angles(t, 20000), Error);
  // endpoint angles
  EigenTable unit = build_table(Isobaric{CharSpec{1}, CharSpec{1}}, 100);
  AngleSeries au = angles(unit, 100);  // lambda(p) = 2 everywhere
  for (auto [p, a] : au.entries) CHECK(a == 0.0);
  EigenTable tq = build_table(TrivialQuadratic{-4}, 100);
  AngleSeries at = angles(tq, 100);
  for (auto [p, a] : at.entries) {
    if (kronecker(-4, p) == -1) CHECK(a == doctest::Approx(0.25).epsilon(1e-12));
    if (kronecker(-4, p) == 1) CHECK(a == 0.0);
  }
}

TEST_CASE("closed-form capability split") {
  CHECK_FALSE(closed_form_at_primes(Level1Holomorphic{12}));
  CHECK(closed_form_at_primes(CMGaussian{}));
  CHECK(closed_form_at_primes(Isobaric{CharSpec{1}, CharSpec{-4}}));
  CHECK(closed_form_at_primes(TrivialQuadratic{-4}));
  CHECK_THROWS_AS(lambda_at_prime(Level1Holomorphic{12}, 101), UnsupportedPrimeError);
  // table-backed source answers below n_max and refuses above
  auto table = std::make_shared<EigenTable>(build_table(Level1Holomorphic{12}, 1000));
  EigenSource src(Level1Holomorphic{12}, table);
  CHECK(src.lambda_prime(997) == table->lambda[997]);
  CHECK_THROWS_AS(src.lambda_prime(1009), UnsupportedPrimeError);
  CHECK(src.prime_bound() == 1000);
}

TEST_CASE("form spec validation and tokens") {
  CHECK_THROWS_AS(validate(FormSpec{Level1Holomorphic{14}}), Error);
  CHECK_THROWS_AS(validate(FormSpec{Level1Holomorphic{24}}), Error);
  CHECK_THROWS_AS(validate(FormSpec{TrivialQuadratic{-5}}), Error);
  CHECK_THROWS_AS(validate(FormSpec{Isobaric{CharSpec{3}, CharSpec{1}}}), Error);
  for (const char* tok :
       {"level1:12", "cm-gaussian", "isobaric:1,-4", "trivial-quadratic:-8"}) {
    CHECK(form_token(parse_form(tok)) == tok);
  }
  CHECK_THROWS_AS(parse_form("level1:13"), Error);
  CHECK_THROWS_AS(parse_form("unknown"), Error);
}

TEST_CASE("cache file roundtrip, checksum and version gates") {
  EigenTable t = build_table(CMGaussian{}, 500);
  std::string path = "cm_roundtrip_test.eig";
  save_table(t, path);
  EigenTable back = load_table(path);
  CHECK(form_token(back.spec) == form_token(t.spec));
  CHECK(back.n_max == t.n_max);
  CHECK(back.raw_len == t.raw_len);
  CHECK(back.raw == t.raw);
  CHECK(back.lambda == t.lambda);

  // flip one payload byte: the checksum must reject it
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fseek(f, 60, SEEK_SET);
    int c = std::fgetc(f);
    std::fseek(f, 60, SEEK_SET);
    std::fputc(c ^ 0x40, f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_table(path), Error);

  // bad magic
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fputs("NOTMAGIC", f);
    std::fclose(f);
  }
  try {
    load_table(path);
    FAIL_CHECK("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::io_error);
  }
  std::remove(path.c_str());
}
