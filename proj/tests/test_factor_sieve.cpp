#include <doctest.h>

#include <cmath>

#include <hecke/factor_sieve.hpp>

#include "oracles.hpp"

using namespace hecke;

namespace {

FactorSieveOptions verified() {
  FactorSieveOptions opt;
  opt.verify_cofactors = true;
  return opt;
}

}  // namespace

TEST_CASE("factorizations reconstruct exactly (trial-division oracle)") {
  for (const char* text : {"x", "x^2+1", "x^3-2", "x^3+x+1", "x^4+1", "2*x^2+2", "x^2-25"}) {
    Poly P = parse_poly(text);
    FactorSieve sieve(P, 3000, verified());
    sieve.for_each([&](const ValueFactorization& vf) {
      BigInt v = P.eval(BigInt(vf.n));
      CHECK(vf.negative == (v < 0));
      if (v < 0) v = -v;
      if (vf.zero_value) {
        CHECK(v == 0);
        return;
      }
      u128 prod = vf.cofactor;
      for (auto [p, e] : vf.factors) {
        CHECK(BigInt(p) <= BigInt(sieve.sieve_bound()));
        for (int i = 0; i < e; ++i) prod *= p;
      }
      CHECK(BigInt(u128_to_string(prod)) == v);
      CHECK(BigInt(u128_to_string(vf.value)) == v);
      // exponents match the oracle factorization
      auto oracle = oracles::trial_factor(vf.value);
      size_t oi = 0;
      for (auto [p, e] : vf.factors) {
        REQUIRE(oi < oracle.size());
        CHECK(oracle[oi].first == (u128)p);
        CHECK(oracle[oi].second == e);
        ++oi;
      }
      if (vf.cofactor > 1) {
        REQUIRE(oi < oracle.size());
        CHECK(oracle[oi].first == vf.cofactor);
        CHECK(oracle[oi].second == 1);
        ++oi;
      }
      CHECK(oi == oracle.size());
    });
  }
}

TEST_CASE("factor sieve examples") {
  Poly P = parse_poly("x^2+1");
  factor_values(P, 10, [&](const ValueFactorization& vf) {
    if (vf.n == 7) {
      CHECK(vf.value == 50);
      REQUIRE(vf.factors.size() == 2);
      CHECK(vf.factors[0] == std::pair<uint64_t, int>{2, 1});
      CHECK(vf.factors[1] == std::pair<uint64_t, int>{5, 2});
      CHECK(vf.cofactor == 1);
    }
    if (vf.n == 4) {
      CHECK(vf.value == 17);
      bool as_cofactor = vf.cofactor == 17 && vf.factors.empty();
      bool as_factor = vf.cofactor == 1 && vf.factors.size() == 1 &&
                       vf.factors[0] == std::pair<uint64_t, int>{17, 1};
      CHECK((as_cofactor || as_factor));
    }
  });
  factor_values(parse_poly("x^3-2"), 10, [&](const ValueFactorization& vf) {
    if (vf.n == 3) {
      CHECK(vf.value == 25);
      REQUIRE(vf.factors.size() == 1);
      CHECK(vf.factors[0] == std::pair<uint64_t, int>{5, 2});
    }
  });
}

TEST_CASE("zero values and negative values are marked") {
  uint64_t zeros = 0;
  factor_values(parse_poly("x^2-25"), 10, [&](const ValueFactorization& vf) {
    if (vf.n == 5) {
      CHECK(vf.zero_value);
      ++zeros;
    }
    if (vf.n < 5) CHECK(vf.negative);
    if (vf.n > 5) CHECK_FALSE(vf.negative);
  });
  CHECK(zeros == 1);
}

TEST_CASE("content primes merge into the factor lists") {
  // 4x^2 + 8 = 4 (x^2 + 2): content 2^2
  factor_values(parse_poly("4*x^2+8"), 50, [&](const ValueFactorization& vf) {
    auto oracle = oracles::trial_factor(vf.value);
    u128 prod = vf.cofactor;
    for (auto [p, e] : vf.factors)
      for (int i = 0; i < e; ++i) prod *= p;
    CHECK(prod == vf.value);
    CHECK(vf.factors[0].first == 2);
    CHECK(vf.factors[0].second >= 2);
  });
}

TEST_CASE("capacity errors name a feasible X") {
  Poly P = parse_poly("x^8+1");
  try {
    FactorSieve sieve(P, 50000000);
    FAIL_CHECK("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.feasible() > 0);
    CHECK(e.feasible() < 50000000);
    FactorSieve ok(P, e.feasible());  // the reported bound must work
    (void)ok;
  }
}

TEST_CASE("eval_multiplicative: divisor-function calibration is exact") {
  EigenSource iso(Isobaric{CharSpec{1}, CharSpec{1}});
  auto res = eval_multiplicative(parse_poly("x"), 100000, iso);
  CHECK(res.series.final_value() == static_cast<double>(oracles::divisor_sum_hyperbola(100000)));
  CHECK(res.zero_skipped == 0);
  CHECK(res.unit_terms == 1);  // n = 1
  // every checkpoint agrees with the oracle, not just the final one
  for (auto [x, v] : res.series.checkpoints)
    CHECK(v == static_cast<double>(oracles::divisor_sum_hyperbola(x)));
}

TEST_CASE("eval_multiplicative examples") {
  EigenSource iso(Isobaric{CharSpec{1}, CharSpec{1}});
  CHECK(eval_multiplicative(parse_poly("x^2+1"), 4, iso).series.final_value() == 10.0);
  CHECK(eval_multiplicative(parse_poly("x"), 1, iso).series.final_value() == 1.0);

  // sum |tau(n)| / n^5.5 for n <= 10 against the series oracle
  auto table = std::make_shared<EigenTable>(build_table(Level1Holomorphic{12}, 16));
  EigenSource l1h(Level1Holomorphic{12}, table);
  auto res = eval_multiplicative(parse_poly("x"), 10, l1h);
  auto tau = oracles::tau_series(10);
  double expect = 0;
  for (int n = 1; n <= 10; ++n)
    expect +=
        std::fabs(tau[n].convert_to<double>()) / std::pow(static_cast<double>(n), 5.5);
  CHECK(res.series.final_value() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(res.series.final_value() == doctest::Approx(6.153).epsilon(1e-3));
}

TEST_CASE("eval_multiplicative refuses out-of-reach primes upfront") {
  auto table = std::make_shared<EigenTable>(build_table(Level1Holomorphic{12}, 10));
  EigenSource src(Level1Holomorphic{12}, table);
  CHECK_THROWS_AS(eval_multiplicative(parse_poly("x"), 20, src), UnsupportedPrimeError);
}

TEST_CASE("zero values are skipped and counted") {
  EigenSource iso(Isobaric{CharSpec{1}, CharSpec{1}});
  auto res = eval_multiplicative(parse_poly("x^2-25"), 10, iso);
  CHECK(res.zero_skipped == 1);
  double expect = 0;
  for (uint64_t n = 1; n <= 10; ++n) {
    if (n == 5) continue;
    expect += oracles::divisor_count(std::llabs((int64_t)(n * n) - 25));
  }
  CHECK(res.series.final_value() == expect);
}

TEST_CASE("squarefree screen examples and soundness") {
  SquarefreeScreen s = squarefree_screen(parse_poly("x^2+1"), 10, 7);
  CHECK(s.at(7) == SquarefreeVerdict::has_small_square);  // 50 = 2 * 5^2
  CHECK(s.at(2) == SquarefreeVerdict::squarefree_up_to_b);
  SquarefreeScreen s2 = squarefree_screen(parse_poly("x"), 12, 3);
  CHECK(s2.at(8) == SquarefreeVerdict::has_small_square);
  CHECK(s2.at(4) == SquarefreeVerdict::has_small_square);
  CHECK(s2.at(6) == SquarefreeVerdict::squarefree_up_to_b);

  // soundness + one-sidedness against the oracle factorization
  for (const char* text : {"x", "x^2+1", "x^3-2", "x^3+x+1"}) {
    Poly P = parse_poly(text);
    uint64_t B = 13;
    SquarefreeScreen scr = squarefree_screen(P, 2000, B);
    for (uint64_t n = 1; n <= 2000; ++n) {
      BigInt v = P.eval(BigInt(n));
      if (v < 0) v = -v;
      if (v == 0) {
        CHECK(scr.at(n) == SquarefreeVerdict::zero_value);
        continue;
      }
      bool small_square = false;
      for (uint64_t p = 2; p <= B; ++p)
        if (v % (BigInt(p) * p) == 0) small_square = true;
      CHECK((scr.at(n) == SquarefreeVerdict::has_small_square) == small_square);
    }
  }
}

TEST_CASE("squarefree screen validates B") {
  CHECK_THROWS_AS(squarefree_screen(parse_poly("x"), 10, 1), Error);
}
