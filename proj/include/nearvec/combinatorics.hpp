#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace nearvec {

using BigInt = boost::multiprecision::cpp_int;

/// Exact C(n, k); zero when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n - k + i, i) here
  }
  return result;
}

/// |St(1, m, G)| = C(|G| + m - 2, m - 1), the number of size-(m-1) multisets
/// over G.
inline BigInt st1_size(std::uint64_t group_order, std::uint64_t m) {
  return binomial(group_order + m - 2, m - 1);
}

}  // namespace nearvec
