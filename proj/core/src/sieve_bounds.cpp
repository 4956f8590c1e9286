#include <hecke/sieve_bounds.hpp>

#include <cmath>

#include <hecke/arith.hpp>
#include <hecke/factor_sieve.hpp>

namespace hecke {

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::nair: return "nair";
    case BoundKind::classical_upper: return "classical_upper";
    case BoundKind::classical_lower: return "classical_lower";
  }
  return "?";
}

namespace {

double checked_weight(const PrimeWeight& f, uint64_t p) {
  double v = f(p);
  if (!(v >= 0.0))
    throw Error(errc::domain_error, "sieve weight f(" + std::to_string(p) + ") is negative");
  return v;
}

}  // namespace

BoundReport nair_bound(const PrimeWeight& f, const RhoTable& rho, uint64_t X) {
  if (rho.p_max < X)
    throw Error(errc::incomplete_table, "rho table stops at " + std::to_string(rho.p_max) +
                                            " but X = " + std::to_string(X));
  BoundReport r;
  r.x = X;
  r.kind = BoundKind::nair;
  double s = 0.0;
  for (const auto& [p, rp] : rho.entries) {
    if (p > X) break;
    if (rp == 0) continue;
    s += rp * (checked_weight(f, p) - 1.0) / static_cast<double>(p);
  }
  r.exponent_sum = s;
  r.bound_value = static_cast<double>(X) * std::exp(s);
  return r;
}

BoundReport classical_product_bound(const PrimeWeight& f, uint64_t X, BoundKind kind) {
  if (X < 2) throw Error(errc::empty_domain, "bound requires X >= 2");
  BoundReport r;
  r.x = X;
  r.kind = kind;
  double logprod = 0.0;
  PrimeStream ps(X);
  ps.for_each([&](uint64_t p) {
    double term = 1.0 + (checked_weight(f, p) - 1.0) / static_cast<double>(p);
    logprod += std::log(term);
  });
  r.exponent_sum = logprod;
  r.bound_value = static_cast<double>(X) * std::exp(logprod);
  return r;
}

LowerBoundCondition lower_bound_condition(const PrimeWeight& f, uint64_t y, double floor) {
  if (y < 2) throw Error(errc::empty_domain, "condition requires y >= 2");
  double s = 0.0;
  PrimeStream ps(y);
  ps.for_each([&](uint64_t p) {
    s += checked_weight(f, p) * std::log(static_cast<double>(p));
  });
  LowerBoundCondition c;
  c.floor = floor;
  c.ratio = s / static_cast<double>(y);
  c.satisfied = c.ratio >= floor;
  return c;
}

CounterexampleResult counterexample_demo(uint64_t X) {
  if (X < 2) throw Error(errc::empty_domain, "counterexample requires X >= 2");
  CounterexampleResult res;
  res.x = X;
  Poly P = parse_poly("x^2+1");
  auto f = [](u128 p, int) -> double { return p % 4 == 3 ? 1.0 : 0.0; };
  res.sum = eval_multiplicative_fn(P, X, f).series.final_value();
  // the remark's would-be lower bound: X prod_{p<=X, p=1 mod 4} (1 - 2/p)
  double logprod = 0.0;
  PrimeStream ps(X);
  ps.for_each([&](uint64_t p) {
    if (p % 4 == 1) logprod += std::log1p(-2.0 / static_cast<double>(p));
  });
  res.pseudo_lower_bound = static_cast<double>(X) * std::exp(logprod);
  return res;
}

}  // namespace hecke
