#include <benchmark/benchmark.h>

#include <hecke/analysis.hpp>
#include <hecke/arith.hpp>
#include <hecke/eigen.hpp>
#include <hecke/factor_sieve.hpp>
#include <hecke/poly.hpp>

using namespace hecke;

static void BM_SegmentedPrimes(benchmark::State& state) {
  uint64_t limit = state.range(0);
  for (auto _ : state) {
    uint64_t count = segmented_primes(limit).count();
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_SegmentedPrimes)->Arg(1000000)->Arg(10000000);

static void BM_EigenTableLevel1(benchmark::State& state) {
  uint64_t n = state.range(0);
  for (auto _ : state) {
    EigenTable t = build_table(Level1Holomorphic{12}, n);
    benchmark::DoNotOptimize(t.lambda.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EigenTableLevel1)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_EigenTableCM(benchmark::State& state) {
  uint64_t n = state.range(0);
  for (auto _ : state) {
    EigenTable t = build_table(CMGaussian{}, n);
    benchmark::DoNotOptimize(t.raw.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EigenTableCM)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Cornacchia(benchmark::State& state) {
  auto primes = segmented_primes(100000).collect();
  std::vector<uint64_t> split;
  for (uint64_t p : primes)
    if (p % 4 == 1) split.push_back(p);
  size_t i = 0;
  for (auto _ : state) {
    GaussianFactor g = cornacchia(split[i]);
    benchmark::DoNotOptimize(g.a);
    i = (i + 1) % split.size();
  }
}
BENCHMARK(BM_Cornacchia);

static void BM_RhoTable(benchmark::State& state) {
  Poly P = parse_poly("x^2+1");
  uint64_t pmax = state.range(0);
  for (auto _ : state) {
    RhoTable t = rho_table(P, pmax);
    benchmark::DoNotOptimize(t.entries.data());
  }
  state.SetItemsProcessed(state.iterations() * pmax);
}
BENCHMARK(BM_RhoTable)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_FactorSieve(benchmark::State& state) {
  Poly P = parse_poly("x^2+1");
  uint64_t X = state.range(0);
  for (auto _ : state) {
    uint64_t count = 0;
    factor_values(P, X, [&](const ValueFactorization& vf) { count += vf.factors.size(); });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * X);
}
BENCHMARK(BM_FactorSieve)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PrimeSumCM(benchmark::State& state) {
  EigenSource cm{CMGaussian{}};
  uint64_t X = state.range(0);
  for (auto _ : state) {
    SumSeries s = prime_sum(cm, PrimeSumKind::S, X);
    benchmark::DoNotOptimize(s.checkpoints.data());
  }
}
BENCHMARK(BM_PrimeSumCM)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
