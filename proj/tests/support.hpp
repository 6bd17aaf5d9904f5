#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "nearvec/nearvec.hpp"

namespace nvtest {

using namespace nearvec;

/// (p, n) for every prime power p^n <= limit, ordered by p^n.
inline std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q <= limit; ++q) {
    for (std::uint64_t p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      // p is the least prime factor of q
      std::uint64_t v = q;
      unsigned n = 0;
      while (v % p == 0) {
        v /= p;
        ++n;
      }
      if (v == 1) out.emplace_back(p, n);
      break;
    }
  }
  return out;
}

inline std::uint64_t gcd_slow(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Canonical classes straight from the definition: units mod M, each
/// replaced by the least element of its coset u<p>.
inline std::set<std::uint64_t> classes_by_definition(std::uint64_t p, unsigned n) {
  std::uint64_t field = 1;
  for (unsigned i = 0; i < n; ++i) field *= p;
  const std::uint64_t mod = field - 1;
  if (mod == 1) return {1};
  std::set<std::uint64_t> out;
  for (std::uint64_t u = 1; u < mod; ++u) {
    if (gcd_slow(u, mod) != 1) continue;
    std::uint64_t best = u, x = u;
    for (unsigned k = 0; k < n; ++k) {
      x = x * p % mod;
      best = std::min(best, x);
    }
    out.insert(best);
  }
  return out;
}

/// Orbit partition of St(1, m, G) computed with plain sets, no
/// lexicographic shortcuts: per support size, the number of orbits.
inline std::map<std::size_t, std::uint64_t> slow_orbit_counts(const QuotientGroup& g,
                                                               std::size_t m) {
  std::set<Multiset> seen;
  std::map<std::size_t, std::uint64_t> out;
  for (const SuitableSequence& s : enumerate_st1(g, m)) {
    if (seen.count(s.entries())) continue;
    const SupportProfile prof = support_profile(s);
    for (GroupElement q : prof.support) seen.insert(scale(g, g.inv(q), s));
    ++out[prof.size()];
  }
  return out;
}

}  // namespace nvtest
