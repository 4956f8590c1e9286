#include <hecke/arith.hpp>

#include <algorithm>
#include <cmath>

namespace hecke {

// --- prime stream -----------------------------------------------------------

static std::vector<uint32_t> simple_sieve(uint64_t limit) {
  std::vector<uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<char> is_prime(limit + 1, 1);
  for (uint64_t i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
  for (uint64_t i = 2; i <= limit; ++i)
    if (is_prime[i]) primes.push_back(static_cast<uint32_t>(i));
  return primes;
}

PrimeStream::PrimeStream(uint64_t limit) : limit_(limit) {
  if (limit_ < 2) throw Error(errc::empty_domain, "prime stream requires limit >= 2");
  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit_)));
  while (root * root > limit_) --root;
  while ((root + 1) * (root + 1) <= limit_) ++root;
  base_ = simple_sieve(root);
}

void PrimeStream::for_each_in(uint64_t lo, uint64_t hi,
                              const std::function<void(uint64_t)>& fn) const {
  hi = std::min(hi, limit_ + 1);
  if (lo < 2) lo = 2;
  if (lo >= hi) return;
  std::vector<char> seg;
  for (uint64_t low = lo; low < hi; low += kSegmentSize) {
    uint64_t high = std::min(low + kSegmentSize, hi);  // segment is [low, high)
    seg.assign(high - low, 1);
    for (uint32_t p : base_) {
      uint64_t pp = p;
      if (pp * pp >= high) break;
      uint64_t start = std::max(pp * pp, (low + pp - 1) / pp * pp);
      for (uint64_t j = start; j < high; j += pp) seg[j - low] = 0;
    }
    for (uint64_t n = low; n < high; ++n)
      if (seg[n - low]) fn(n);
  }
}

void PrimeStream::for_each(const std::function<void(uint64_t)>& fn) const {
  for_each_in(2, limit_ + 1, fn);
}

uint64_t PrimeStream::count() const {
  uint64_t c = 0;
  for_each([&](uint64_t) { ++c; });
  return c;
}

std::vector<uint64_t> PrimeStream::collect() const {
  std::vector<uint64_t> v;
  for_each([&](uint64_t p) { v.push_back(p); });
  return v;
}

PrimeStream segmented_primes(uint64_t limit) { return PrimeStream(limit); }

// --- Kronecker symbol -------------------------------------------------------

int kronecker(int64_t d, uint64_t n) { return kronecker(d, (i128)n); }

int kronecker(int64_t d, i128 n) {
  // standard extension of Jacobi: handle n = 0, factor out 2 with the
  // (d|2) rule, flip by quadratic reciprocity
  i128 a = d;
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;  // (d | -1) component
    if (a < 0) sign = -sign;
  }
  if (((a & 1) == 0) && ((n & 1) == 0)) return 0;
  // pull out twos from n: (a|2) = 0 if a even, else (2|a) = +-1 by a mod 8
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos & 1) {
    int64_t am8 = (int64_t)(((a % 8) + 8) % 8);
    if (am8 == 3 || am8 == 5) sign = -sign;
  }
  // now n odd positive; run Jacobi(a, n) on the least nonnegative residue
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i128 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) sign = -sign;
    }
    std::swap(a, n);
    if ((a % 4 == 3) && (n % 4 == 3)) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

bool is_fundamental_discriminant(int64_t d) {
  if (d == 1) return false;
  auto squarefree = [](int64_t m) {
    if (m < 0) m = -m;
    for (int64_t q = 2; q * q <= m; ++q)
      if (m % (q * q) == 0) return false;
    return true;
  };
  int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r == 0) {
    int64_t m = d / 4;
    int64_t rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

// --- modular square root ----------------------------------------------------

std::optional<uint64_t> try_sqrt_mod(uint64_t a, uint64_t p) {
  if (p < 3 || p % 2 == 0) throw Error(errc::domain_error, "sqrt_mod requires an odd prime");
  a %= p;
  if (a == 0) return 0;
  if (powmod64(a, (p - 1) / 2, p) != 1) return std::nullopt;
  uint64_t r;
  if (p % 4 == 3) {
    r = powmod64(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    uint64_t z = 2;
    while (powmod64(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = s;
    uint64_t c = powmod64(z, q, p);
    uint64_t t = powmod64(a, q, p);
    r = powmod64(a, (q + 1) / 2, p);
    while (t != 1) {
      uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod64(tt, tt, p);
        ++i;
      }
      uint64_t b = c;
      for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod64(b, b, p);
      m = i;
      c = mulmod64(b, b, p);
      t = mulmod64(t, c, p);
      r = mulmod64(r, b, p);
    }
  }
  if (r > p - r) r = p - r;  // canonical root <= p/2
  return r;
}

uint64_t sqrt_mod(uint64_t a, uint64_t p) {
  auto r = try_sqrt_mod(a, p);
  if (!r) throw Error(errc::non_residue, "quadratic non-residue (inert prime)");
  return *r;
}

// --- Cornacchia -------------------------------------------------------------

GaussianFactor cornacchia(uint64_t p) {
  if (p == 2) throw Error(errc::ramified, "p = 2 ramifies in Z[i]");
  if (p % 4 == 3) throw Error(errc::inert, "p = 3 mod 4 is inert in Z[i]");
  if (p % 4 != 1 || !is_probable_prime(p))
    throw Error(errc::domain_error, "cornacchia requires a prime = 1 mod 4");
  uint64_t t = sqrt_mod(p - 1, p);  // root of x^2 = -1
  // Euclidean descent on (p, t) until the remainder drops below sqrt(p)
  uint64_t r0 = p, r1 = t;
  uint64_t bound = static_cast<uint64_t>(std::sqrt(static_cast<double>(p)));
  while (bound * bound > p) --bound;
  while ((bound + 1) * (bound + 1) <= p) ++bound;
  while (r1 > bound) {
    uint64_t r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  uint64_t a = r1;
  uint64_t b2 = p - a * a;
  uint64_t b = static_cast<uint64_t>(std::sqrt(static_cast<double>(b2)));
  while (b * b > b2) --b;
  while ((b + 1) * (b + 1) <= b2) ++b;
  if (b * b != b2 || a * a + b * b != p)
    throw Error(errc::domain_error, "cornacchia descent failed (p not prime?)");
  GaussianFactor g;
  g.p = p;
  if (a % 2 == 1) {
    g.a = static_cast<int64_t>(a);
    g.b = static_cast<int64_t>(b);
  } else {
    g.a = static_cast<int64_t>(b);
    g.b = static_cast<int64_t>(a);
  }
  return g;
}

// --- probabilistic primality ------------------------------------------------

static bool miller_rabin_witness(u128 n, u128 a) {
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u128 x = powmod128(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod128(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_probable_prime(u128 n, int rounds) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic base set for n < 3.3 * 10^24, then fixed extra rounds
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!miller_rabin_witness(n, a)) return false;
  }
  if (n >> 80 != 0) {
    uint64_t x = 0x9e3779b97f4a7c15ULL;  // fixed-seed splitmix for extra bases
    for (int i = 0; i < rounds; ++i) {
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
      u128 a = 2 + (u128)z % (n - 3);
      if (!miller_rabin_witness(n, a)) return false;
    }
  }
  return true;
}

}  // namespace hecke
