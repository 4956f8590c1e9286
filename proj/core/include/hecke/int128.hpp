#pragma once

#include <cstdint>
#include <string>

namespace hecke {

using u128 = unsigned __int128;
using i128 = __int128;

std::string u128_to_string(u128 x);
std::string i128_to_string(i128 x);

// (a * b) mod m for m < 2^63
inline uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((u128)a * b % m);
}

uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m);

// 128-bit modulus versions (shift-and-add; only used off the hot path)
u128 mulmod128(u128 a, u128 b, u128 m);
u128 powmod128(u128 base, u128 exp, u128 m);

}  // namespace hecke
