#include "oracles.hpp"

#include <cmath>

namespace oracles {

std::vector<uint64_t> plain_sieve(uint64_t limit) {
  std::vector<char> is(limit + 1, 1);
  std::vector<uint64_t> primes;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!is[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) is[j] = 0;
  }
  return primes;
}

bool trial_is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<BigInt> tau_series(uint64_t len) {
  // coefficients of q^1 .. q^len of q prod (1 - q^m)^24
  std::vector<BigInt> acc(len, 0);  // index i = coefficient of q^i in prod
  acc[0] = 1;
  for (uint64_t m = 1; m < len; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      // multiply by (1 - q^m): c[i] -= c[i - m], descending
      for (uint64_t i = len - 1; i >= m; --i) acc[i] -= acc[i - m];
    }
  }
  std::vector<BigInt> tau(len + 1, 0);  // tau[n], 1-based
  for (uint64_t n = 1; n <= len; ++n) tau[n] = acc[n - 1];
  return tau;
}

std::vector<BigInt> eigenform_series(int weight, uint64_t len) {
  std::vector<BigInt> tau = tau_series(len);
  std::vector<BigInt> cur(len, 0);  // coefficient of q^(n+1)
  for (uint64_t n = 0; n < len; ++n) cur[n] = tau[n + 1];
  auto sigma = [](uint64_t n, int k) {
    BigInt s = 0;
    for (uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) {
        BigInt pw = d;
        for (int i = 1; i < k; ++i) pw *= d;
        s += pw;
      }
    return s;
  };
  auto mul_eis = [&](int which) {
    std::vector<BigInt> e(len, 0);
    e[0] = 1;
    for (uint64_t n = 1; n < len; ++n)
      e[n] = (which == 4 ? 240 : -504) * sigma(n, which == 4 ? 3 : 5);
    std::vector<BigInt> out(len, 0);
    for (uint64_t i = 0; i < len; ++i)
      for (uint64_t j = 0; i + j < len; ++j) out[i + j] += cur[i] * e[j];
    cur = std::move(out);
  };
  int e4 = 0, e6 = 0;
  switch (weight) {
    case 12: break;
    case 16: e4 = 1; break;
    case 18: e6 = 1; break;
    case 20: e4 = 2; break;
    case 22: e4 = 1; e6 = 1; break;
    case 26: e4 = 2; e6 = 1; break;
    default: throw std::runtime_error("weight");
  }
  for (int i = 0; i < e4; ++i) mul_eis(4);
  for (int i = 0; i < e6; ++i) mul_eis(6);
  std::vector<BigInt> out(len + 1, 0);
  for (uint64_t n = 1; n <= len; ++n) out[n] = cur[n - 1];
  return out;
}

uint64_t ec_point_count(uint64_t p) {
  // y^2 = x^3 - x over F_p, exhaustive
  uint64_t count = 1;  // point at infinity
  if (p == 2) {
    for (uint64_t x = 0; x < 2; ++x)
      for (uint64_t y = 0; y < 2; ++y)
        if ((y * y) % 2 == ((x * x * x + 2 * p * p - x) % 2)) ++count;
    return count;
  }
  std::vector<int8_t> is_square(p, 0);
  for (uint64_t y = 0; y < p; ++y) is_square[(y * y) % p] = 1;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t rhs = (x * x % p * x % p + p - x % p) % p;
    if (rhs == 0)
      count += 1;
    else if (is_square[rhs])
      count += 2;
  }
  return count;
}

int64_t gaussian_ideal_count(uint64_t m) {
  // ideals of norm m are generator orbits under the 4 units: r2(m) / 4
  int64_t r2 = 0;
  int64_t lim = static_cast<int64_t>(std::sqrt(static_cast<double>(m))) + 1;
  for (int64_t a = -lim; a <= lim; ++a)
    for (int64_t b = -lim; b <= lim; ++b)
      if (static_cast<uint64_t>(a * a + b * b) == m) ++r2;
  return r2 / 4;
}

int64_t divisor_sum_hyperbola(uint64_t X) {
  int64_t s = 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(X)));
  while (r * r > X) --r;
  while ((r + 1) * (r + 1) <= X) ++r;
  for (uint64_t a = 1; a <= r; ++a) s += static_cast<int64_t>(X / a);
  return 2 * s - static_cast<int64_t>(r * r);
}

int64_t divisor_count(uint64_t n) {
  int64_t c = 0;
  for (uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  return c;
}

int root_count_bruteforce(const hecke::Poly& P, uint64_t p) {
  int count = 0;
  for (uint64_t a = 0; a < p; ++a) {
    BigInt v = P.eval(BigInt(a)) % p;
    if (v == 0) ++count;
  }
  return count;
}

namespace {

// resultant over F_p by the Euclidean identity
// Res(A,B) = (-1)^(da db) lc(B)^(da - dr) Res(B, A mod B)
uint64_t resultant_mod_p(std::vector<uint64_t> A, std::vector<uint64_t> B, uint64_t p) {
  auto trim = [](std::vector<uint64_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  auto powm = [p](uint64_t b, uint64_t e) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  trim(A);
  trim(B);
  uint64_t res = 1;
  while (true) {
    if (B.empty()) return 0;
    int da = static_cast<int>(A.size()) - 1;
    int db = static_cast<int>(B.size()) - 1;
    if (db == 0) return res * powm(B[0], da) % p;
    // R = A mod B
    std::vector<uint64_t> R = A;
    uint64_t inv = powm(B.back(), p - 2);
    while (static_cast<int>(R.size()) - 1 >= db && !R.empty()) {
      int dr = static_cast<int>(R.size()) - 1;
      uint64_t q = R.back() * inv % p;
      for (int j = 0; j <= db; ++j) {
        uint64_t sub = q * B[j] % p;
        uint64_t& t = R[dr - db + j];
        t = (t >= sub) ? t - sub : t + p - sub;
      }
      R.pop_back();
      trim(R);
    }
    int dr = R.empty() ? -1 : static_cast<int>(R.size()) - 1;
    if (dr < 0) return 0;
    if ((da % 2) && (db % 2) && (p != 2)) res = res * (p - 1) % p;
    res = res * powm(B.back(), da - dr) % p;
    A = std::move(B);
    B = std::move(R);
  }
}

}  // namespace

BigInt resultant_prs(std::vector<BigInt> A, std::vector<BigInt> B) {
  auto trim = [](std::vector<BigInt>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  trim(A);
  trim(B);
  if (A.empty() || B.empty()) return 0;
  // Chinese-remainder the F_p resultants against a row-norm determinant bound
  BigInt bound = 1;
  int da = static_cast<int>(A.size()) - 1, db = static_cast<int>(B.size()) - 1;
  BigInt na = 0, nb = 0;
  for (const auto& c : A) na += abs(c);
  for (const auto& c : B) nb += abs(c);
  for (int i = 0; i < db; ++i) bound *= na;
  for (int i = 0; i < da; ++i) bound *= nb;
  bound = 2 * bound + 1;

  BigInt modulus = 1, value = 0;
  uint64_t p = 2147483659ULL;  // primes above 2^31
  while (modulus < bound) {
    while (!trial_is_prime(p)) ++p;
    if (A.back() % p != 0 && B.back() % p != 0) {
      auto red = [p](const std::vector<BigInt>& f) {
        std::vector<uint64_t> g(f.size());
        for (size_t i = 0; i < f.size(); ++i) {
          BigInt r = f[i] % p;
          if (r < 0) r += p;
          g[i] = r.convert_to<uint64_t>();
        }
        return g;
      };
      uint64_t rp = resultant_mod_p(red(A), red(B), p);
      // CRT merge
      BigInt diff = (BigInt(rp) - value) % p;
      if (diff < 0) diff += p;
      // need modulus^{-1} mod p
      BigInt minv = 1;
      {
        int64_t m0 = (modulus % p).convert_to<int64_t>();
        uint64_t inv = 1, base = static_cast<uint64_t>(m0), e = p - 2;
        while (e) {
          if (e & 1) inv = (unsigned __int128)inv * base % p;
          base = (unsigned __int128)base * base % p;
          e >>= 1;
        }
        minv = inv;
      }
      value += modulus * ((diff * minv) % p);
      modulus *= p;
    }
    ++p;
  }
  if (2 * value > modulus) value -= modulus;  // balanced representative
  return value;
}

std::vector<std::pair<u128, int>> trial_factor(u128 v) {
  std::vector<std::pair<u128, int>> out;
  for (u128 d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      int e = 0;
      while (v % d == 0) {
        v /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (v > 1) out.emplace_back(v, 1);
  return out;
}

}  // namespace oracles
