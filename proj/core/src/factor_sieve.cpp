#include <hecke/factor_sieve.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <hecke/arith.hpp>

namespace hecke {

namespace {

u128 isqrt_u128(u128 v) {
  if (v == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

u128 bigint_to_u128(const BigInt& v) {
  static const BigInt kMask64 = BigInt(0xffffffffffffffffULL);
  BigInt a = abs(v);
  u128 r = static_cast<u128>((a & kMask64).convert_to<uint64_t>());
  r |= static_cast<u128>(((a >> 64) & kMask64).convert_to<uint64_t>()) << 64;
  return r;  // callers guarantee |v| < 2^128
}

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 bigint_mod_u128(const BigInt& c, u128 m) {
  BigInt mm = 0;
  // BigInt from u128
  mm = static_cast<uint64_t>(m >> 64);
  mm <<= 64;
  mm += static_cast<uint64_t>(m);
  BigInt r = c % mm;
  if (r < 0) r += mm;
  return bigint_to_u128(r);
}

// Pollard-Brent; only used to factor the (small) polynomial content.
u128 pollard_rho(u128 n) {
  if (n % 2 == 0) return 2;
  u128 x = 2, y = 2, d = 1, c = 1;
  auto f = [&](u128 v) { return (mulmod128(v, v, n) + c) % n; };
  while (d == 1 || d == n) {
    if (d == n) {
      ++c;
      x = y = 2;
    }
    x = f(x);
    y = f(f(y));
    u128 diff = x > y ? x - y : y - x;
    d = gcd_u128(diff == 0 ? n : diff, n);
  }
  return d;
}

void factor_small(u128 n, std::vector<std::pair<u128, int>>& out) {
  for (uint64_t d = 2; d < 1000000 && (u128)d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  u128 d = pollard_rho(n);
  std::vector<std::pair<u128, int>> a, b;
  factor_small(d, a);
  factor_small(n / d, b);
  for (auto& [p, e] : a) out.push_back({p, e});
  for (auto& [p, e] : b) {
    bool merged = false;
    for (auto& [q, f] : out)
      if (q == p) {
        f += e;
        merged = true;
        break;
      }
    if (!merged) out.push_back({p, e});
  }
}

constexpr u128 kValueCap = u128(1) << 126;

}  // namespace

// --- construction: content, budgets, root lifting -----------------------------

FactorSieve::FactorSieve(const Poly& P, uint64_t X, const FactorSieveOptions& opt)
    : x_(X), opt_(opt) {
  if (X < 1) throw Error(errc::domain_error, "factor sieve requires X >= 1");

  // capacity: values must fit 126 bits and the sieve prime bound must be
  // enumerable; report the largest X that would work
  auto fits = [&](uint64_t x) {
    BigInt b = P.bound_abs(x);
    if (b >= BigInt(1) << 126) return false;
    u128 bound = bigint_to_u128(b);
    return isqrt_u128(bound) + 1 <= opt_.sieve_prime_budget;
  };
  if (!fits(X)) {
    uint64_t lo = 0, hi = X;  // fits(lo) true (X >= 1 -> check lo = 1 below)
    if (!fits(1))
      throw CapacityError("polynomial values exceed the sieve capacity at any X", 0);
    lo = 1;
    while (lo + 1 < hi) {
      uint64_t mid = lo + (hi - lo) / 2;
      (fits(mid) ? lo : hi) = mid;
    }
    throw CapacityError("factor sieve budget exceeded; feasible X = " + std::to_string(lo), lo);
  }

  // strip the content so no prime divides every coefficient
  BigInt g = 0;
  for (const auto& c : P.coeffs) g = gcd(g, abs(c));
  content_ = bigint_to_u128(g);
  std::vector<BigInt> reduced_coeffs = P.coeffs;
  if (g > 1)
    for (auto& c : reduced_coeffs) c /= g;
  reduced_ = make_poly(std::move(reduced_coeffs));
  narrow_ = reduced_.narrow_coeffs();

  const u128 bound = bigint_to_u128(P.bound_abs(X));
  uint64_t b0 = static_cast<uint64_t>(isqrt_u128(bound)) + 1;
  if (b0 < 2) b0 = 2;
  sieve_bound_ = b0;

  if (content_ > 1) {
    std::vector<std::pair<u128, int>> cf;
    factor_small(content_, cf);
    for (auto& [p, e] : cf) {
      if (p >> 63 != 0)
        throw CapacityError("content has a prime factor >= 2^63", 0);
      content_factors_.emplace_back(static_cast<uint64_t>(p), e);
      sieve_bound_ = std::max(sieve_bound_, static_cast<uint64_t>(p));
    }
    std::sort(content_factors_.begin(), content_factors_.end());
  }

  // root lifting: levels p^k <= bound
  std::vector<BigInt> deriv(reduced_.coeffs.size() - 1);
  for (size_t i = 1; i < reduced_.coeffs.size(); ++i) deriv[i - 1] = reduced_.coeffs[i] * i;

  PrimeStream ps(b0);
  ps.for_each([&](uint64_t p) {
    std::vector<uint64_t> roots = roots_mod_p(reduced_, p);
    if (roots.empty()) return;
    // P'(r) mod p decides Hensel vs exhaustive lifting
    auto deriv_at = [&](uint64_t r) {
      uint64_t acc = 0;
      for (auto it = deriv.rbegin(); it != deriv.rend(); ++it) {
        BigInt c = *it % p;
        if (c < 0) c += p;
        acc = (mulmod64(acc, r, p) + c.convert_to<uint64_t>()) % p;
      }
      return acc;
    };
    auto eval_mod = [&](u128 r, u128 m) {
      u128 acc = 0;
      for (auto it = reduced_.coeffs.rbegin(); it != reduced_.coeffs.rend(); ++it)
        acc = (mulmod128(acc, r, m) + bigint_mod_u128(*it, m)) % m;
      return acc;
    };

    std::vector<u128> cur(roots.begin(), roots.end());
    u128 m = p;
    for (const u128 r : cur) levels_.push_back({m, r, p, false});
    uint64_t singular_work = 0;
    bool capped = false;
    while (!cur.empty() && m <= bound / p) {
      u128 m2 = m * p;
      std::vector<u128> next;
      for (u128 r : cur) {
        uint64_t rp = static_cast<uint64_t>(r % p);
        uint64_t dr = deriv_at(rp);
        if (dr != 0) {
          // unique Hensel lift: r' = r - P(r) * inv(P'(r)) mod m2
          u128 pr = eval_mod(r, m2);
          u128 t = (pr / m) % p;  // P(r) = m * t mod m2 since P(r) = 0 mod m
          uint64_t inv = powmod64(dr, p - 2, p);
          u128 corr = (u128)mulmod64(static_cast<uint64_t>(t), inv, p) * m;
          u128 lifted = (r + m2 - corr % m2) % m2;
          if (eval_mod(lifted, m2) != 0)
            throw Error(errc::domain_error, "Hensel lift failed (internal)");
          next.push_back(lifted);
        } else {
          // singular root: scan all p residues above r
          if (singular_work + p > opt_.singular_work_cap) {
            capped = true;
            break;
          }
          singular_work += p;
          for (uint64_t t = 0; t < p; ++t) {
            u128 cand = r + m * t;
            if (eval_mod(cand, m2) == 0) next.push_back(cand);
          }
        }
      }
      if (capped) break;
      m = m2;
      for (const u128 r : next) levels_.push_back({m, r, p, false});
      cur = std::move(next);
    }
    if (capped) capped_.push_back(p);
  });

  // mark the deepest built level of each capped prime for strike-time repair
  for (uint64_t p : capped_) {
    u128 deepest = 0;
    for (const Level& lv : levels_)
      if (lv.p == p) deepest = std::max(deepest, lv.modulus);
    for (Level& lv : levels_)
      if (lv.p == p && lv.modulus == deepest) lv.repair = true;
  }
}

// --- streaming ----------------------------------------------------------------

void FactorSieve::for_each(const std::function<void(const ValueFactorization&)>& fn) const {
  constexpr uint64_t kBlock = 1 << 16;
  std::vector<u128> val(kBlock);
  std::vector<u128> orig(kBlock);
  std::vector<uint8_t> neg(kBlock), zero(kBlock);
  std::vector<std::vector<std::pair<uint64_t, int>>> facs(kBlock);

  for (uint64_t lo = 1; lo <= x_; lo += kBlock) {
    uint64_t hi = std::min(lo + kBlock, x_ + 1);
    uint64_t len = hi - lo;
    for (uint64_t i = 0; i < len; ++i) {
      i128 v;
      if (narrow_) {
        v = reduced_.eval_i128(static_cast<int64_t>(lo + i));
      } else {
        BigInt b = reduced_.eval(BigInt(lo + i));
        v = static_cast<i128>(bigint_to_u128(b)) * (b < 0 ? -1 : 1);
      }
      neg[i] = v < 0;
      zero[i] = v == 0;
      u128 a = v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v);
      val[i] = a;
      orig[i] = a;
      facs[i].clear();
    }

    for (const Level& lv : levels_) {
      const uint64_t p = lv.p;
      auto strike = [&](uint64_t n) {
        uint64_t i = n - lo;
        if (zero[i]) return;
        val[i] /= p;
        auto& f = facs[i];
        if (!f.empty() && f.back().first == p) {
          ++f.back().second;
        } else {
          f.emplace_back(p, 1);
        }
        if (lv.repair) {
          while (val[i] % p == 0) {
            val[i] /= p;
            ++f.back().second;
          }
        }
      };
      if (lv.modulus >= hi) {
        if (lv.root >= lo && lv.root < hi && lv.root >= 1)
          strike(static_cast<uint64_t>(lv.root));
        continue;
      }
      const uint64_t m = static_cast<uint64_t>(lv.modulus);
      const uint64_t r = static_cast<uint64_t>(lv.root);
      uint64_t rem = lo % m;
      uint64_t n0 = lo + (r >= rem ? r - rem : r + m - rem);
      for (uint64_t n = n0; n < hi; n += m) strike(n);
    }

    for (uint64_t i = 0; i < len; ++i) {
      ValueFactorization vf;
      vf.n = lo + i;
      vf.zero_value = zero[i];
      vf.negative = neg[i];
      if (vf.zero_value) {
        vf.value = 0;
        vf.cofactor = 1;
        fn(vf);
        continue;
      }
      vf.value = content_ * orig[i];
      vf.cofactor = val[i];
      if (vf.cofactor != 1 && opt_.verify_cofactors && !is_probable_prime(vf.cofactor, 40))
        throw Error(errc::domain_error,
                    "cofactor failed primality at n = " + std::to_string(vf.n) +
                        " (sieve defect)");
      // merge content factors (sorted) with the struck factors (sorted)
      if (content_factors_.empty()) {
        vf.factors = facs[i];
      } else {
        vf.factors.reserve(content_factors_.size() + facs[i].size());
        size_t a = 0, b = 0;
        while (a < content_factors_.size() || b < facs[i].size()) {
          if (b == facs[i].size() ||
              (a < content_factors_.size() && content_factors_[a].first < facs[i][b].first)) {
            vf.factors.push_back(content_factors_[a++]);
          } else if (a == content_factors_.size() ||
                     facs[i][b].first < content_factors_[a].first) {
            vf.factors.push_back(facs[i][b++]);
          } else {
            vf.factors.emplace_back(content_factors_[a].first,
                                    content_factors_[a].second + facs[i][b].second);
            ++a;
            ++b;
          }
        }
      }
      fn(vf);
    }
  }
}

void factor_values(const Poly& P, uint64_t X,
                   const std::function<void(const ValueFactorization&)>& fn,
                   const FactorSieveOptions& opt) {
  FactorSieve(P, X, opt).for_each(fn);
}

// --- multiplicative evaluation --------------------------------------------------

namespace {

EvalResult eval_impl(const Poly& P, uint64_t X,
                     const std::function<double(const ValueFactorization&)>& term,
                     const std::string& label, double checkpoint_ratio) {
  FactorSieve sieve(P, X);
  EvalResult res;
  res.series.label = label;
  auto grid = checkpoint_grid(X, checkpoint_ratio);
  size_t gi = 0;
  double sum = 0.0;
  sieve.for_each([&](const ValueFactorization& vf) {
    if (vf.zero_value) {
      ++res.zero_skipped;
    } else if (vf.value == 1) {
      sum += 1.0;
      ++res.unit_terms;
    } else {
      sum += term(vf);
    }
    while (gi < grid.size() && vf.n == grid[gi]) {
      res.series.checkpoints.emplace_back(grid[gi], sum);
      ++gi;
    }
  });
  return res;
}

}  // namespace

EvalResult eval_multiplicative(const Poly& P, uint64_t X, const EigenSource& src,
                               double checkpoint_ratio) {
  {
    // capability gate: the largest prime that can appear is bounded by the
    // value bound; tabulated specs must cover it
    BigInt b = P.bound_abs(X);
    BigInt cap = 0;
    cap = static_cast<uint64_t>(src.prime_bound() >> 64);
    cap <<= 64;
    cap += static_cast<uint64_t>(src.prime_bound());
    if (b > cap)
      throw UnsupportedPrimeError(
          "eigenvalue source cannot reach primes up to the value bound " + b.str(), 0, b.str());
  }
  auto term = [&](const ValueFactorization& vf) -> double {
    double t = 1.0;
    try {
      for (auto [p, e] : vf.factors) t *= std::fabs(src.lambda_prime_power(p, e));
      if (vf.cofactor > 1) t *= std::fabs(src.lambda_prime_power(vf.cofactor, 1));
    } catch (const UnsupportedPrimeError& e) {
      throw UnsupportedPrimeError(e.what(), vf.n, e.prime());
    }
    return t;
  };
  return eval_impl(P, X, term, "corr-sum:" + form_token(src.spec()) + ":" + P.to_string(),
                   checkpoint_ratio);
}

EvalResult eval_multiplicative_fn(const Poly& P, uint64_t X,
                                  const std::function<double(u128 p, int e)>& f,
                                  double checkpoint_ratio) {
  auto term = [&](const ValueFactorization& vf) -> double {
    double t = 1.0;
    for (auto [p, e] : vf.factors) t *= f(p, e);
    if (vf.cofactor > 1) t *= f(vf.cofactor, 1);
    return t;
  };
  return eval_impl(P, X, term, "fn-sum:" + P.to_string(), checkpoint_ratio);
}

// --- squarefree screen -----------------------------------------------------------

uint64_t SquarefreeScreen::count(SquarefreeVerdict v) const {
  uint64_t c = 0;
  for (auto f : flags)
    if (f == v) ++c;
  return c;
}

SquarefreeScreen squarefree_screen(const Poly& P, uint64_t X, uint64_t B) {
  if (B < 2) throw Error(errc::domain_error, "squarefree screen requires B >= 2");
  if (X < 1) throw Error(errc::domain_error, "squarefree screen requires X >= 1");
  SquarefreeScreen s;
  s.bound_b = B;
  s.x_max = X;
  s.flags.assign(X, SquarefreeVerdict::squarefree_up_to_b);

  BigInt g = 0;
  for (const auto& c : P.coeffs) g = gcd(g, abs(c));
  std::vector<BigInt> rc = P.coeffs;
  if (g > 1)
    for (auto& c : rc) c /= g;
  Poly P1 = make_poly(std::move(rc));
  const bool narrow = P1.narrow_coeffs();
  const BigInt big_bound = P.bound_abs(X);
  if (big_bound >= BigInt(1) << 126)
    throw CapacityError("squarefree screen: values exceed 126 bits", 0);

  for (uint64_t n = 1; n <= X; ++n) {
    bool is_zero = narrow ? P1.eval_i128(static_cast<int64_t>(n)) == 0
                          : P1.eval(BigInt(n)) == 0;
    if (is_zero) s.flags[n - 1] = SquarefreeVerdict::zero_value;
  }

  std::vector<std::pair<u128, int>> cf;
  if (g > 1) factor_small(bigint_to_u128(g), cf);
  auto content_exp = [&](uint64_t p) {
    for (auto& [q, e] : cf)
      if (q == p) return e;
    return 0;
  };

  auto flag_progression = [&](u128 modulus, u128 root) {
    if (modulus > X) {
      if (root >= 1 && root <= X && s.flags[static_cast<uint64_t>(root) - 1] !=
                                        SquarefreeVerdict::zero_value)
        s.flags[static_cast<uint64_t>(root) - 1] = SquarefreeVerdict::has_small_square;
      return;
    }
    uint64_t m = static_cast<uint64_t>(modulus);
    uint64_t r = static_cast<uint64_t>(root % modulus);
    uint64_t n0 = r == 0 ? m : r;
    for (uint64_t n = n0; n <= X; n += m)
      if (s.flags[n - 1] != SquarefreeVerdict::zero_value)
        s.flags[n - 1] = SquarefreeVerdict::has_small_square;
  };

  PrimeStream ps(B);
  ps.for_each([&](uint64_t p) {
    int ce = content_exp(p);
    if (ce >= 2) {
      for (uint64_t n = 1; n <= X; ++n)
        if (s.flags[n - 1] != SquarefreeVerdict::zero_value)
          s.flags[n - 1] = SquarefreeVerdict::has_small_square;
      return;
    }
    std::vector<uint64_t> roots = roots_mod_p(P1, p);
    if (roots.empty()) return;
    if (ce == 1) {
      // one factor of p comes from the content; any root of P1 makes p^2
      for (uint64_t r : roots) flag_progression(p, r);
      return;
    }
    // need p^2 | P1(n): lift roots to mod p^2
    u128 m2 = (u128)p * p;
    auto eval_mod = [&](u128 r) {
      u128 acc = 0;
      for (auto it = P1.coeffs.rbegin(); it != P1.coeffs.rend(); ++it)
        acc = (mulmod128(acc, r, m2) + bigint_mod_u128(*it, m2)) % m2;
      return acc;
    };
    std::vector<BigInt> deriv(P1.coeffs.size() - 1);
    for (size_t i = 1; i < P1.coeffs.size(); ++i) deriv[i - 1] = P1.coeffs[i] * i;
    auto deriv_at = [&](uint64_t r) {
      uint64_t acc = 0;
      for (auto it = deriv.rbegin(); it != deriv.rend(); ++it) {
        BigInt c = *it % p;
        if (c < 0) c += p;
        acc = (mulmod64(acc, r, p) + c.convert_to<uint64_t>()) % p;
      }
      return acc;
    };
    for (uint64_t r : roots) {
      uint64_t dr = deriv_at(r);
      if (dr != 0) {
        u128 pr = eval_mod(r);
        u128 t = (pr / p) % p;
        uint64_t inv = powmod64(dr, p - 2, p);
        u128 corr = (u128)mulmod64(static_cast<uint64_t>(t), inv, p) * p;
        u128 lifted = (r + m2 - corr % m2) % m2;
        if (eval_mod(lifted) == 0) flag_progression(m2, lifted);
      } else {
        for (uint64_t t = 0; t < p; ++t) {
          u128 cand = r + (u128)p * t;
          if (eval_mod(cand) == 0) flag_progression(m2, cand);
        }
      }
    }
  });
  return s;
}

}  // namespace hecke
