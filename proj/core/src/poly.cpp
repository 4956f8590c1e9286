#include <hecke/poly.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include <hecke/arith.hpp>
#include <hecke/parallel.hpp>

namespace hecke {

// --- basic polynomial plumbing ----------------------------------------------

BigInt Poly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

i128 Poly::eval_i128(int64_t n) const {
  i128 acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * n + static_cast<i128>(it->convert_to<int64_t>());
  return acc;
}

BigInt Poly::bound_abs(uint64_t X) const {
  BigInt acc = 0, pw = 1;
  for (const auto& c : coeffs) {
    acc += abs(c) * pw;
    pw *= X;
  }
  return acc;
}

bool Poly::narrow_coeffs() const {
  for (const auto& c : coeffs)
    if (c > std::numeric_limits<int64_t>::max() || c < std::numeric_limits<int64_t>::min())
      return false;
  return true;
}

std::string Poly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs[i];
    if (c == 0) continue;
    BigInt a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) os << a.str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

// Sylvester resultant by fraction-free (Bareiss) elimination.
static BigInt resultant(const std::vector<BigInt>& A, const std::vector<BigInt>& B) {
  const int m = static_cast<int>(A.size()) - 1;
  const int n = static_cast<int>(B.size()) - 1;
  if (m < 0 || n < 0) return 0;
  if (n == 0) {
    BigInt r = 1;
    for (int i = 0; i < m; ++i) r *= B[0];
    return r;
  }
  const int N = m + n;
  std::vector<std::vector<BigInt>> M(N, std::vector<BigInt>(N, 0));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + j] = A[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) M[n + r][r + j] = B[n - j];
  int sign = 1;
  BigInt den = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / den;
      M[i][k] = 0;
    }
    den = M[k][k];
  }
  return sign * M[N - 1][N - 1];
}

Poly make_poly(std::vector<BigInt> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty() || (coeffs.size() == 1))
    throw Error(errc::degree_zero, "constant polynomial");
  Poly P;
  P.coeffs = std::move(coeffs);
  const int d = P.degree();
  if (d == 1) {
    P.disc = 1;
  } else {
    std::vector<BigInt> dPc(d);
    for (int i = 1; i <= d; ++i) dPc[i - 1] = P.coeffs[i] * i;
    while (dPc.size() > 1 && dPc.back() == 0) dPc.pop_back();
    BigInt res = (dPc.size() == 1 && dPc[0] == 0) ? 0 : resultant(P.coeffs, dPc);
    BigInt disc = res / P.lead();
    if ((int64_t(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
    P.disc = disc;
  }
  return P;
}

// --- parser -----------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(errc::parse_error,
                "parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  static constexpr int kMaxDegree = 4096;

  using Coeffs = std::vector<BigInt>;  // dense, constant first

  static Coeffs add(const Coeffs& a, const Coeffs& b, int sgn) {
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += sgn * b[i];
    return r;
  }

  Coeffs mul(const Coeffs& a, const Coeffs& b) {
    if (a.size() + b.size() > kMaxDegree + 2) fail("degree limit exceeded");
    Coeffs r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }

  Coeffs parse_expr() {
    skip_ws();
    int sgn = 1;
    if (consume('-'))
      sgn = -1;
    else
      consume('+');
    Coeffs acc = parse_term();
    if (sgn < 0)
      for (auto& c : acc) c = -c;
    for (;;) {
      if (consume('+'))
        acc = add(acc, parse_term(), +1);
      else if (consume('-'))
        acc = add(acc, parse_term(), -1);
      else
        break;
    }
    return acc;
  }

  Coeffs parse_term() {
    Coeffs acc = parse_factor();
    while (consume('*')) acc = mul(acc, parse_factor());
    return acc;
  }

  Coeffs parse_factor() {
    Coeffs base = parse_primary();
    if (consume('^')) {
      skip_ws();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        fail("expected a nonnegative integer exponent");
      uint64_t e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        e = e * 10 + (s[pos] - '0');
        if (e > kMaxDegree) fail("exponent too large");
        ++pos;
      }
      Coeffs r{BigInt(1)};
      Coeffs pw = base;
      while (e > 0) {
        if (e & 1) r = mul(r, pw);
        e >>= 1;
        if (e > 0) pw = mul(pw, pw);
      }
      return r;
    }
    return base;
  }

  Coeffs parse_primary() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Coeffs inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' || c == 'X') {
      ++pos;
      return Coeffs{BigInt(0), BigInt(1)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Coeffs{BigInt(s.substr(start, pos - start))};
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string& text) {
  Parser p(text);
  auto coeffs = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return make_poly(std::move(coeffs));
}

// --- arithmetic mod p -------------------------------------------------------

namespace {

uint64_t bigint_mod_u64(const BigInt& c, uint64_t p) {
  BigInt r = c % p;
  if (r < 0) r += p;
  return r.convert_to<uint64_t>();
}

using ModPoly = std::vector<uint64_t>;  // dense mod-p coeffs, constant first

void mp_trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly reduce_mod_p(const Poly& P, uint64_t p) {
  ModPoly f(P.coeffs.size());
  for (size_t i = 0; i < P.coeffs.size(); ++i) f[i] = bigint_mod_u64(P.coeffs[i], p);
  mp_trim(f);
  return f;
}

int mp_deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + (u128)a[i] * b[j]) % p;
  }
  mp_trim(r);
  return r;
}

// remainder of a by monic-normalized b
ModPoly mp_rem(ModPoly a, const ModPoly& b, uint64_t p) {
  int db = mp_deg(b);
  if (db < 0) throw Error(errc::domain_error, "poly division by zero");
  uint64_t inv_lead = powmod64(b.back(), p - 2, p);
  while (mp_deg(a) >= db) {
    int da = mp_deg(a);
    uint64_t q = mulmod64(a.back(), inv_lead, p);
    if (q != 0)
      for (int j = 0; j <= db; ++j) {
        uint64_t sub = mulmod64(q, b[j], p);
        uint64_t& t = a[da - db + j];
        t = (t >= sub) ? t - sub : t + p - sub;
      }
    a.pop_back();
    mp_trim(a);
  }
  return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, uint64_t p) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    ModPoly r = mp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {  // monic normal form
    uint64_t inv = powmod64(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod64(c, inv, p);
  }
  return a;
}

ModPoly mp_powmod(ModPoly base, uint64_t e, const ModPoly& mod, uint64_t p) {
  ModPoly r{1};
  base = mp_rem(std::move(base), mod, p);
  while (e > 0) {
    if (e & 1) r = mp_rem(mp_mul(r, base, p), mod, p);
    e >>= 1;
    if (e > 0) base = mp_rem(mp_mul(base, base, p), mod, p);
  }
  return r;
}

// x^p mod f
ModPoly mp_frobenius(const ModPoly& f, uint64_t p) {
  return mp_powmod(ModPoly{0, 1}, p, f, p);
}

bool mp_is_zero_everywhere(const ModPoly& f) { return f.empty(); }

// exact quotient num / den (remainder known to be zero)
ModPoly mp_divexact(ModPoly num, const ModPoly& den, uint64_t p) {
  int dd = mp_deg(den);
  uint64_t inv = powmod64(den.back(), p - 2, p);
  ModPoly quot(num.size() - den.size() + 1, 0);
  while (mp_deg(num) >= dd) {
    int dn = mp_deg(num);
    uint64_t c = mulmod64(num.back(), inv, p);
    quot[dn - dd] = c;
    for (int j = 0; j <= dd; ++j) {
      uint64_t sub = mulmod64(c, den[j], p);
      uint64_t& t = num[dn - dd + j];
      t = (t >= sub) ? t - sub : t + p - sub;
    }
    num.pop_back();
    mp_trim(num);
  }
  return quot;
}

}  // namespace

// --- rho --------------------------------------------------------------------

int rho_bruteforce(const Poly& P, uint64_t p) {
  ModPoly f = reduce_mod_p(P, p);
  if (mp_is_zero_everywhere(f))
    throw Error(errc::degenerate_prime, "P vanishes identically mod " + std::to_string(p));
  int count = 0;
  for (uint64_t a = 0; a < p; ++a) {
    uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod64(acc, a, p) + *it) % p;
    if (acc == 0) ++count;
  }
  return count;
}

int rho_gcd(const Poly& P, uint64_t p) {
  ModPoly f = reduce_mod_p(P, p);
  if (mp_is_zero_everywhere(f))
    throw Error(errc::degenerate_prime, "P vanishes identically mod " + std::to_string(p));
  if (mp_deg(f) == 0) return 0;
  // gcd(x^p - x, f) has degree = number of distinct roots, even at
  // ramified p, since x^p - x is squarefree
  ModPoly xp = mp_frobenius(f, p);
  // xp - x
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;
  mp_trim(xp);
  ModPoly g = mp_gcd(f, xp, p);
  return std::max(0, mp_deg(g));
}

int rho(const Poly& P, uint64_t p) {
  return p <= kRhoBruteforceCrossover ? rho_bruteforce(P, p) : rho_gcd(P, p);
}

double RhoTable::mean() const {
  if (entries.empty()) return 0.0;
  double s = 0;
  for (auto& [p, r] : entries) s += r;
  return s / static_cast<double>(entries.size());
}

int RhoTable::at(uint64_t p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const auto& e, uint64_t v) { return e.first < v; });
  if (it == entries.end() || it->first != p)
    throw Error(errc::incomplete_table, "rho table has no entry for p = " + std::to_string(p));
  return it->second;
}

RhoTable rho_table(const Poly& P, uint64_t p_max) {
  if (p_max < 2) throw Error(errc::empty_domain, "rho_table requires p_max >= 2");
  RhoTable t;
  t.p_max = p_max;
  PrimeStream ps(p_max);
  // block results are merged in index order, so the table is deterministic
  const uint64_t block = PrimeStream::kSegmentSize;
  size_t nblocks = static_cast<size_t>((p_max - 1) / block) + 1;
  std::vector<std::vector<std::pair<uint64_t, int>>> parts(nblocks);
  std::vector<std::vector<uint64_t>> degen(nblocks);

  parallel_blocks(2, p_max + 1, block, [&](size_t b, uint64_t lo, uint64_t hi) {
    ps.for_each_in(lo, hi, [&](uint64_t p) {
      try {
        parts[b].emplace_back(p, rho(P, p));
      } catch (const Error& e) {
        if (e.code() == errc::degenerate_prime)
          degen[b].push_back(p);
        else
          throw;
      }
    });
  });
  for (size_t b = 0; b < nblocks; ++b) {
    t.entries.insert(t.entries.end(), parts[b].begin(), parts[b].end());
    t.degenerate.insert(t.degenerate.end(), degen[b].begin(), degen[b].end());
  }
  return t;
}

// --- root extraction --------------------------------------------------------

std::vector<uint64_t> roots_mod_p(const Poly& P, uint64_t p) {
  std::vector<uint64_t> roots;
  ModPoly f = reduce_mod_p(P, p);
  if (mp_is_zero_everywhere(f))
    throw Error(errc::degenerate_prime, "P vanishes identically mod " + std::to_string(p));
  if (p <= kRhoBruteforceCrossover) {
    for (uint64_t a = 0; a < p; ++a) {
      uint64_t acc = 0;
      for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod64(acc, a, p) + *it) % p;
      if (acc == 0) roots.push_back(a);
    }
    return roots;
  }
  ModPoly xp = mp_frobenius(f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;
  mp_trim(xp);
  ModPoly g = mp_gcd(f, xp, p);  // product of the distinct linear factors
  // Cantor-Zassenhaus, degree-one case: split with gcd((x+a)^((p-1)/2) - 1, g)
  std::vector<ModPoly> stack{g};
  uint64_t shift = 1;
  while (!stack.empty()) {
    ModPoly h = std::move(stack.back());
    stack.pop_back();
    int d = mp_deg(h);
    if (d <= 0) continue;
    if (d == 1) {
      uint64_t r = mulmod64(p - h[0] % p, powmod64(h[1], p - 2, p), p) % p;
      roots.push_back(r);
      continue;
    }
    for (;; ++shift) {
      ModPoly base{shift % p, 1};
      ModPoly w = mp_powmod(base, (p - 1) / 2, h, p);
      if (w.empty())
        w = ModPoly{p - 1};
      else
        w[0] = (w[0] + p - 1) % p;  // w - 1
      mp_trim(w);
      ModPoly q = mp_gcd(h, w, p);
      int dq = mp_deg(q);
      if (dq > 0 && dq < d) {
        ModPoly rest = mp_divexact(h, q, p);
        stack.push_back(std::move(q));
        stack.push_back(std::move(rest));
        ++shift;
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// --- factorization pattern --------------------------------------------------

std::string FactorizationPattern::key() const {
  std::string s;
  for (size_t i = 0; i < degrees.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(degrees[i]);
  }
  return s;
}

FactorizationPattern factor_pattern(const Poly& P, uint64_t p) {
  if (P.disc % p == 0 || P.lead() % p == 0)
    throw Error(errc::ramified_prime,
                "factor_pattern requires p unramified (p = " + std::to_string(p) + ")");
  FactorizationPattern pat;
  pat.p = p;
  ModPoly f = reduce_mod_p(P, p);
  // monic normalization
  if (f.back() != 1) {
    uint64_t inv = powmod64(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod64(c, inv, p);
  }
  // distinct-degree factorization; f is squarefree since p is unramified
  ModPoly h{0, 1};  // x
  int i = 0;
  while (2 * (i + 1) <= mp_deg(f)) {
    ++i;
    h = mp_powmod(h, p, f, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    mp_trim(hx);
    ModPoly g = mp_gcd(f, hx, p);
    int dg = mp_deg(g);
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) pat.degrees.push_back(i);
      f = mp_divexact(f, g, p);
      h = mp_rem(std::move(h), f, p);
    }
  }
  if (mp_deg(f) > 0) pat.degrees.push_back(mp_deg(f));
  std::sort(pat.degrees.begin(), pat.degrees.end());
  return pat;
}

// --- reducibility evidence ---------------------------------------------------

namespace {

std::vector<BigInt> small_divisors(const BigInt& n, uint64_t trial_cap) {
  std::vector<BigInt> divs;
  BigInt a = abs(n);
  if (a == 0) return divs;
  for (uint64_t d = 1; d <= trial_cap; ++d) {
    if (BigInt(d) * d > a) break;
    if (a % d == 0) {
      divs.emplace_back(d);
      divs.push_back(a / d);
    }
  }
  return divs;
}

bool pattern_refines_split(const std::vector<int>& degrees, int d1) {
  // subset of parts summing exactly to d1
  int total = 0;
  for (int d : degrees) total += d;
  std::vector<char> reach(total + 1, 0);
  reach[0] = 1;
  for (int d : degrees)
    for (int s = total; s >= d; --s)
      if (reach[s - d]) reach[s] = 1;
  return reach[d1];
}

}  // namespace

ReducibilityReport reducibility_scan(const Poly& P, int sample_primes) {
  ReducibilityReport rep;
  const int d = P.degree();
  if (d <= 1) return rep;
  // rational root search: r/s with r | c0, s | lc
  if (P.coeffs[0] == 0) {
    rep.rational_root_found = true;
    rep.root_num = 0;
    rep.root_den = 1;
    return rep;
  }
  auto rs = small_divisors(P.coeffs[0], 10000);
  auto ss = small_divisors(P.lead(), 10000);
  for (const BigInt& rr : rs) {
    for (const BigInt& sv : ss) {
      for (int sgn : {1, -1}) {
        // P(r/s) = 0  <=>  sum c_i r^i s^(d-i) = 0
        BigInt acc = 0, rp = 1;
        BigInt r = sgn * rr;
        for (int i = 0; i <= d; ++i) {
          BigInt sp = 1;
          for (int j = 0; j < d - i; ++j) sp *= sv;
          acc += P.coeffs[i] * rp * sp;
          rp *= r;
        }
        if (acc == 0 && gcd(abs(r), sv) == 1) {
          rep.rational_root_found = true;
          rep.root_num = r.convert_to<int64_t>();
          rep.root_den = sv.convert_to<int64_t>();
          return rep;
        }
      }
    }
  }
  // degree patterns at the first few unramified primes
  std::vector<std::vector<int>> pats;
  uint64_t p = 2;
  while (static_cast<int>(pats.size()) < sample_primes && p < 10000) {
    while (!is_probable_prime(p)) ++p;
    try {
      auto fp = factor_pattern(P, p);
      if (fp.degrees.size() == 1) return rep;  // irreducible mod p: certified
      pats.push_back(fp.degrees);
    } catch (const Error&) {
      // ramified or degenerate: skip
    }
    ++p;
  }
  if (static_cast<int>(pats.size()) < sample_primes) return rep;
  for (int d1 = 1; d1 <= d / 2; ++d1) {
    bool all = true;
    for (const auto& pat : pats)
      if (!pattern_refines_split(pat, d1)) {
        all = false;
        break;
      }
    if (all) {
      rep.pattern_split_found = true;
      rep.split_lo = d1;
      rep.split_hi = d - d1;
      return rep;
    }
  }
  return rep;
}

}  // namespace hecke
