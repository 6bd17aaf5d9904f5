#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"

namespace nearvec {

// Small exact modular arithmetic helpers. Products go through 128-bit
// intermediates so any modulus below 2^64 is safe.

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e,
                            std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return result;
}

/// Inverse of `a` modulo `m`, or nullopt when gcd(a, m) != 1.
inline std::optional<std::uint64_t> modinv(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quot = old_r / r;
    const __int128 tr = old_r - quot * r;
    old_r = r;
    r = tr;
    const __int128 ts = old_s - quot * s;
    old_s = s;
    s = ts;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

/// Deterministic trial division.
inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d <= v / d; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

/// base^e, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base,
                                                unsigned e) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

/// Distinct prime factors of v, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= v / d; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::uint64_t euler_phi(std::uint64_t v) {
  if (v == 0) return 0;
  std::uint64_t phi = v;
  for (std::uint64_t f : prime_factors(v)) phi = phi / f * (f - 1);
  return phi;
}

/// Positive divisors of v, ascending.
inline std::vector<std::uint64_t> divisors(std::uint64_t v) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d <= v / d; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d != v / d) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// U(M) = { 1 <= q <= M : gcd(q, M) = 1 }, ascending. For M = 1 this is [1].
inline std::vector<std::uint64_t> unit_group(std::uint64_t modulus) {
  if (modulus == 0) {
    throw Error(ErrorKind::InvalidArgument, "unit_group: modulus must be >= 1");
  }
  if (modulus == 1) return {1};
  std::vector<std::uint64_t> units;
  for (std::uint64_t q = 1; q <= modulus; ++q) {
    if (std::gcd(q, modulus) == 1) units.push_back(q);
  }
  return units;
}

}  // namespace nearvec
