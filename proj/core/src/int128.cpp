#include <hecke/int128.hpp>

#include <algorithm>

namespace hecke {

std::string u128_to_string(u128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(static_cast<char>('0' + (int)(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string i128_to_string(i128 x) {
  if (x < 0) return "-" + u128_to_string((u128)(-x));
  return u128_to_string((u128)x);
}

uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = m > 1 ? 1 % m : 0;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return r;
}

u128 mulmod128(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  if (a == 0 || b == 0) return 0;
  // fast path: product fits in 128 bits
  if (a <= ~(u128)0 / b) return a * b % m;
  u128 r = 0;
  while (b > 0) {
    // overflow-safe addmod/doublemod: a, r < m
    if (b & 1) r = (r >= m - a) ? r - (m - a) : r + a;
    a = (a >= m - a) ? a - (m - a) : a + a;
    b >>= 1;
  }
  return r;
}

u128 powmod128(u128 base, u128 exp, u128 m) {
  u128 r = m > 1 ? 1 % m : 0;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod128(r, base, m);
    base = mulmod128(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace hecke
