#include <hecke/eigen.hpp>

#include <algorithm>
#include <cmath>

#include <hecke/parallel.hpp>
#include <hecke/poly.hpp>

namespace hecke {

// --- eta^3 sparse series ------------------------------------------------------
//
// Jacobi: eta(q)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}, so Delta = q (eta^3)^8
// and tau(n) is the coefficient of q^(n-1) in (eta^3)^8. Seven multiplications
// of a dense accumulator by the sparse series give the full table; coefficients
// are carried as doubles (the relative error stays near machine epsilon, see
// the eigenvalue tests) and exactly in __int128 up to the raw budget.

namespace {

struct EtaTerm {
  uint64_t off;
  int64_t c;
};

std::vector<EtaTerm> eta3_terms(uint64_t len) {
  std::vector<EtaTerm> t;
  for (uint64_t k = 0;; ++k) {
    uint64_t off = k * (k + 1) / 2;
    if (off >= len) break;
    int64_t c = static_cast<int64_t>(2 * k + 1);
    t.push_back({off, (k % 2 == 0) ? c : -c});
  }
  return t;
}

// acc <- acc * eta^3, truncated to length len, parallel over output blocks
void eta3_stage(std::vector<double>& acc, std::vector<double>& scratch,
                const std::vector<EtaTerm>& terms) {
  const uint64_t len = acc.size();
  parallel_blocks(0, len, uint64_t(1) << 20, [&](size_t, uint64_t lo, uint64_t hi) {
    std::fill(scratch.begin() + lo, scratch.begin() + hi, 0.0);
    for (const auto& t : terms) {
      if (t.off >= hi) break;
      uint64_t b = std::max(lo, t.off);
      const double c = static_cast<double>(t.c);
      const double* src = acc.data() + (b - t.off);
      double* dst = scratch.data() + b;
      for (uint64_t i = 0, m = hi - b; i < m; ++i) dst[i] += c * src[i];
    }
  });
  acc.swap(scratch);
}

// (eta^3)^8 coefficients 0..len-1 as doubles; tau(n) = coeff[n-1]
std::vector<double> eta24_doubles(uint64_t len) {
  auto terms = eta3_terms(len);
  std::vector<double> acc(len, 0.0), scratch(len);
  for (const auto& t : terms) acc[t.off] = static_cast<double>(t.c);
  for (int s = 0; s < 7; ++s) eta3_stage(acc, scratch, terms);
  return acc;
}

// exact version; len kept small enough that __int128 cannot overflow
// (coefficients of eta^(3m) grow like n^(3m/4 - 1/2))
std::vector<i128> eta24_exact(uint64_t len) {
  auto terms = eta3_terms(len);
  std::vector<i128> acc(len, 0), out(len);
  for (const auto& t : terms) acc[t.off] = t.c;
  for (int s = 0; s < 7; ++s) {
    std::fill(out.begin(), out.end(), i128(0));
    for (const auto& t : terms)
      for (uint64_t n = t.off; n < len; ++n) out[n] += (i128)t.c * acc[n - t.off];
    acc.swap(out);
  }
  return acc;
}

// sigma_k sums for the Eisenstein factors
std::vector<double> sigma_doubles(uint64_t len, int k) {
  std::vector<double> s(len, 0.0);
  for (uint64_t d = 1; d < len; ++d) {
    double pw = std::pow(static_cast<double>(d), k);
    for (uint64_t m = d; m < len; m += d) s[m] += pw;
  }
  return s;
}

// E4 = 1 + 240 sigma_3, E6 = 1 - 504 sigma_5 (index = exponent of q)
std::vector<double> eisenstein_doubles(uint64_t len, int which) {
  int k = which == 4 ? 3 : 5;
  double scale = which == 4 ? 240.0 : -504.0;
  auto e = sigma_doubles(len, k);
  for (auto& v : e) v *= scale;
  e[0] = 1.0;
  return e;
}

// dense truncated product, parallel over output blocks
std::vector<double> dense_mul(const std::vector<double>& a, const std::vector<double>& b) {
  const uint64_t len = a.size();
  std::vector<double> out(len, 0.0);
  parallel_blocks(0, len, uint64_t(1) << 14, [&](size_t, uint64_t lo, uint64_t hi) {
    for (uint64_t n = lo; n < hi; ++n) {
      double s = 0;
      for (uint64_t m = 0; m <= n; ++m) s += a[m] * b[n - m];
      out[n] = s;
    }
  });
  return out;
}

struct WeightShift {
  int e4 = 0, e6 = 0;
};

WeightShift weight_shift(int weight) {
  switch (weight) {
    case 12: return {0, 0};
    case 16: return {1, 0};
    case 18: return {0, 1};
    case 20: return {2, 0};
    case 22: return {1, 1};
    case 26: return {2, 1};
    default: throw Error(errc::domain_error, "unsupported weight");
  }
}

// exact small-range coefficients for any supported weight, arbitrary precision
std::vector<BigInt> coeffs_exact_big(int weight, uint64_t len) {
  auto terms = eta3_terms(len);
  std::vector<BigInt> acc(len, 0), out(len);
  for (const auto& t : terms) acc[t.off] = t.c;
  for (int s = 0; s < 7; ++s) {
    std::fill(out.begin(), out.end(), BigInt(0));
    for (const auto& t : terms)
      for (uint64_t n = t.off; n < len; ++n) out[n] += t.c * acc[n - t.off];
    acc.swap(out);
  }
  auto shift = weight_shift(weight);
  auto mul_eis = [&](int which) {
    int k = which == 4 ? 3 : 5;
    int64_t scale = which == 4 ? 240 : -504;
    std::vector<BigInt> e(len, 0);
    for (uint64_t d = 1; d < len; ++d) {
      BigInt pw = BigInt(d);
      for (int i = 1; i < k; ++i) pw *= d;
      for (uint64_t m = d; m < len; m += d) e[m] += pw;
    }
    for (auto& v : e) v *= scale;
    e[0] = 1;
    std::vector<BigInt> prod(len, 0);
    for (uint64_t n = 0; n < len; ++n) {
      BigInt s = 0;
      for (uint64_t m = 0; m <= n; ++m) s += acc[m] * e[n - m];
      prod[n] = s;
    }
    acc.swap(prod);
  };
  for (int i = 0; i < shift.e4; ++i) mul_eis(4);
  for (int i = 0; i < shift.e6; ++i) mul_eis(6);
  return acc;
}

EigenTable build_level1(const Level1Holomorphic& s, uint64_t n_max, const BuildOptions& opt) {
  if (n_max > opt.series_budget)
    throw CapacityError("series budget exceeded (n_max " + std::to_string(n_max) + ")",
                        opt.series_budget);
  auto shift = weight_shift(s.weight);
  const bool shifted = shift.e4 > 0 || shift.e6 > 0;
  if (shifted && n_max > opt.eisenstein_budget)
    throw CapacityError("weight-" + std::to_string(s.weight) +
                            " tables need a dense Eisenstein convolution; n_max " +
                            std::to_string(n_max) + " over budget",
                        opt.eisenstein_budget);

  EigenTable t;
  t.spec = s;
  t.n_max = n_max;

  std::vector<double> coeff = eta24_doubles(n_max);
  for (int i = 0; i < shift.e4; ++i) coeff = dense_mul(coeff, eisenstein_doubles(n_max, 4));
  for (int i = 0; i < shift.e6; ++i) coeff = dense_mul(coeff, eisenstein_doubles(n_max, 6));

  const double half = (s.weight - 1) / 2.0;
  t.lambda.assign(n_max + 1, 0.0);
  for (uint64_t n = 1; n <= n_max; ++n)
    t.lambda[n] = coeff[n - 1] * std::pow(static_cast<double>(n), -half);

  // exact coefficients, stopping where int64 would overflow
  uint64_t raw_cap = std::min(n_max, opt.raw_budget);
  t.raw.assign(raw_cap + 1, 0);
  if (s.weight == 12) {
    auto exact = eta24_exact(raw_cap);
    uint64_t n = 1;
    for (; n <= raw_cap; ++n) {
      i128 v = exact[n - 1];
      if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
        break;
      t.raw[n] = static_cast<int64_t>(v);
    }
    t.raw_len = n - 1;
  } else {
    raw_cap = std::min<uint64_t>(raw_cap, 1000);
    auto exact = coeffs_exact_big(s.weight, raw_cap);
    uint64_t n = 1;
    for (; n <= raw_cap; ++n) {
      const BigInt& v = exact[n - 1];
      if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
        break;
      t.raw[n] = v.convert_to<int64_t>();
    }
    t.raw_len = n - 1;
  }
  t.raw.resize(t.raw_len + 1);
  return t;
}

// --- CM form (y^2 = x^3 - x) --------------------------------------------------

// a_p = pi + conj(pi) for the primary generator pi = a + bi (a+b = 1 mod 4)
// of a split prime; 0 at inert primes and at the ramified prime 2.
int64_t cm_ap(uint64_t p) {
  if (p == 2 || p % 4 == 3) return 0;
  GaussianFactor g = cornacchia(p);
  int64_t a = g.a, b = g.b;
  if (b < 0) b = -b;
  return (((a + b) % 4 + 4) % 4 == 1) ? 2 * a : -2 * a;
}

EigenTable build_cm(uint64_t n_max, const BuildOptions& opt) {
  if (n_max > opt.series_budget)
    throw CapacityError("series budget exceeded", opt.series_budget);
  EigenTable t;
  t.spec = CMGaussian{};
  t.n_max = n_max;
  t.raw.assign(n_max + 1, 0);
  t.lambda.assign(n_max + 1, 0.0);
  t.raw[1] = 1;
  t.lambda[1] = 1.0;

  // smallest prime factor sieve, then multiplicative fill
  std::vector<uint32_t> spf(n_max + 1, 0);
  std::vector<uint32_t> primes;
  for (uint64_t n = 2; n <= n_max; ++n) {
    if (spf[n] == 0) {
      spf[n] = static_cast<uint32_t>(n);
      primes.push_back(static_cast<uint32_t>(n));
    }
    for (uint32_t p : primes) {
      if (p > spf[n] || p * n > n_max) break;
      spf[p * n] = p;
    }
  }
  for (uint64_t n = 2; n <= n_max; ++n) {
    uint64_t p = spf[n];
    uint64_t m = n, e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    int64_t ape;
    if (m == 1 && e == 1) {
      ape = cm_ap(p);  // new prime
    } else {
      // Chebyshev extension: a(p^(j+1)) = a(p) a(p^j) - p a(p^(j-1)); the
      // ramified prime 2 has a(2^j) = 0
      if (p == 2) {
        ape = 0;
      } else {
        int64_t ap = t.raw[p];
        int64_t prev = 1, cur = ap;
        for (uint64_t j = 1; j < e; ++j) {
          int64_t nxt = ap * cur - static_cast<int64_t>(p) * prev;
          prev = cur;
          cur = nxt;
        }
        ape = cur;
      }
      if (m == 1) {
        t.raw[n] = ape;
        t.lambda[n] = static_cast<double>(ape) / std::sqrt(static_cast<double>(n));
        continue;
      }
    }
    if (m == 1) {
      t.raw[n] = ape;
    } else {
      uint64_t pe = n / m;
      t.raw[n] = t.raw[pe] * t.raw[m];
    }
    t.lambda[n] = static_cast<double>(t.raw[n]) / std::sqrt(static_cast<double>(n));
  }
  t.raw_len = n_max;
  return t;
}

// --- isobaric / quadratic-count tables ----------------------------------------

EigenTable build_convolution(const FormSpec& spec, const CharSpec& psi1, const CharSpec& psi2,
                             uint64_t n_max, const BuildOptions& opt) {
  if (n_max > opt.series_budget)
    throw CapacityError("series budget exceeded", opt.series_budget);
  EigenTable t;
  t.spec = spec;
  t.n_max = n_max;
  t.lambda.assign(n_max + 1, 0.0);
  std::vector<int8_t> chi2(n_max + 1);
  for (uint64_t n = 1; n <= n_max; ++n) chi2[n] = static_cast<int8_t>(psi2.at(n));
  for (uint64_t a = 1; a <= n_max; ++a) {
    int c1 = psi1.at(a);
    if (c1 == 0) continue;
    double c = c1;
    for (uint64_t b = 1, nb = a; nb <= n_max; ++b, nb += a) t.lambda[nb] += c * chi2[b];
  }
  return t;
}

}  // namespace

// --- public operations ----------------------------------------------------------

EigenTable build_table(const FormSpec& spec, uint64_t n_max, const BuildOptions& opt) {
  validate(spec);
  if (n_max < 1) throw Error(errc::domain_error, "n_max must be >= 1");
  return std::visit(
      [&](const auto& s) -> EigenTable {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Level1Holomorphic>) {
          return build_level1(s, n_max, opt);
        } else if constexpr (std::is_same_v<T, CMGaussian>) {
          return build_cm(n_max, opt);
        } else if constexpr (std::is_same_v<T, Isobaric>) {
          return build_convolution(spec, s.psi1, s.psi2, n_max, opt);
        } else {
          return build_convolution(spec, CharSpec{1}, CharSpec{s.d}, n_max, opt);
        }
      },
      spec);
}

double lambda_at_prime_wide(const FormSpec& spec, u128 p) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Level1Holomorphic>) {
          (void)s;
          throw UnsupportedPrimeError("level-1 holomorphic forms are table-only", 0,
                                      u128_to_string(p));
        } else if constexpr (std::is_same_v<T, CMGaussian>) {
          if (p == 2 || p % 4 == 3) return 0.0;
          if (p >> 62 != 0)
            throw CapacityError("cm-gaussian closed form limited to p < 2^62", uint64_t(1) << 62);
          uint64_t pp = static_cast<uint64_t>(p);
          return static_cast<double>(cm_ap(pp)) / std::sqrt(static_cast<double>(pp));
        } else if constexpr (std::is_same_v<T, Isobaric>) {
          return s.psi1.at(p) + s.psi2.at(p);
        } else {
          return 1.0 + kronecker(s.d, (i128)p);
        }
      },
      spec);
}

double lambda_at_prime(const FormSpec& spec, uint64_t p) { return lambda_at_prime_wide(spec, p); }

double extend_prime_power(double lambda_p, int e, bool ramified) {
  if (e < 0) throw Error(errc::domain_error, "exponent must be >= 0");
  const double slack = 1e-9;
  if (!ramified && std::fabs(lambda_p) > 2.0 + slack)
    throw Error(errc::domain_error, "|lambda(p)| > 2 at an unramified prime");
  if (ramified && std::fabs(lambda_p) > 1.0 + slack)
    throw Error(errc::domain_error, "|lambda(p)| > 1 at a ramified prime");
  if (e == 0) return 1.0;
  if (ramified) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= lambda_p;
    return r;
  }
  double prev = 1.0, cur = lambda_p;
  for (int i = 1; i < e; ++i) {
    double nxt = lambda_p * cur - prev;
    prev = cur;
    cur = nxt;
  }
  return cur;
}

AngleSeries angles(const EigenTable& table, uint64_t p_max) {
  if (p_max > table.n_max)
    throw Error(errc::domain_error, "angles: p_max exceeds the table");
  AngleSeries out;
  PrimeStream ps(p_max);
  ps.for_each([&](uint64_t p) {
    if (is_ramified_prime(table.spec, p)) return;
    double l = table.lambda_at(p);
    if (std::fabs(l) > 2.0 + 1e-12)
      throw Error(errc::ramanujan_violation,
                  "|lambda(" + std::to_string(p) + ")| = " + std::to_string(std::fabs(l)));
    double c = std::clamp(l / 2.0, -1.0, 1.0);
    out.entries.emplace_back(p, std::acos(c) / (2.0 * M_PI));
  });
  return out;
}

// --- EigenSource -----------------------------------------------------------------

EigenSource::EigenSource(FormSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  closed_ = closed_form_at_primes(spec_);
}

EigenSource::EigenSource(FormSpec spec, std::shared_ptr<const EigenTable> table)
    : spec_(std::move(spec)), table_(std::move(table)) {
  validate(spec_);
  closed_ = closed_form_at_primes(spec_);
}

u128 EigenSource::prime_bound() const {
  if (std::holds_alternative<CMGaussian>(spec_)) return u128(1) << 62;
  if (closed_) return u128(1) << 126;
  return table_ ? table_->n_max : 0;
}

double EigenSource::lambda_prime(u128 p) const {
  if (table_ && p <= table_->n_max) return table_->lambda_at(static_cast<uint64_t>(p));
  if (closed_) return lambda_at_prime_wide(spec_, p);
  throw UnsupportedPrimeError("prime outside the eigenvalue table", 0, u128_to_string(p));
}

double EigenSource::lambda_prime_power(u128 p, int e) const {
  if (e == 0) return 1.0;
  // character forms carry a possibly nontrivial central character, so the
  // plain Chebyshev recurrence does not apply; sum the Satake parameters
  if (const auto* iso = std::get_if<Isobaric>(&spec_)) {
    int a = iso->psi1.at(p), b = iso->psi2.at(p);
    double s = 0;
    for (int j = 0; j <= e; ++j) {
      int term = 1;
      for (int i = 0; i < j; ++i) term *= a;
      for (int i = j; i < e; ++i) term *= b;
      s += term;
    }
    return s;
  }
  if (const auto* tq = std::get_if<TrivialQuadratic>(&spec_)) {
    int chi = kronecker(tq->d, (i128)p);
    if (chi == 1) return e + 1.0;
    if (chi == 0) return 1.0;
    return e % 2 == 0 ? 1.0 : 0.0;
  }
  bool ram = p < (u128(1) << 63) && is_ramified_prime(spec_, static_cast<uint64_t>(p));
  return extend_prime_power(lambda_prime(p), e, ram);
}

}  // namespace hecke
