#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "combinatorics.hpp"
#include "error.hpp"
#include "group.hpp"
#include "subgroups.hpp"

namespace nearvec {

// Closed-form class counts. Orbits never mix support sizes, so everything is
// organised per support size N. A sequence whose stabiliser is H lies in an
// orbit of size N/|H|; sbar(H) counts the sequences whose stabiliser is
// exactly H, and T(N) follows by summing |H| sbar(H) / N.

struct NCount {
  BigInt t_n;                        // |St(1, m, N)|
  std::map<Subgroup, BigInt> sbar;   // nontrivial applicable subgroups only
  BigInt classes;                    // T(N)
};

struct CountReport {
  std::uint64_t m = 0;
  std::map<std::uint64_t, NCount> per_n;
  BigInt total;
};

namespace detail {

inline void check_range(std::uint64_t group_order, std::uint64_t m,
                        std::uint64_t n_support) {
  if (m == 0 || n_support == 0 || n_support > std::min(m, group_order)) {
    throw Error(ErrorKind::InvalidArgument,
                "N = " + std::to_string(n_support) +
                    " is outside 1..min(m, |G|) = 1.." +
                    std::to_string(std::min(m, group_order)));
  }
}

inline BigInt exact_div(const BigInt& num, std::uint64_t den, const char* what) {
  if (num % den != 0) {
    throw Error(ErrorKind::Internal,
                std::string(what) + ": " + num.str() + " is not divisible by " +
                    std::to_string(den));
  }
  return num / den;
}

}  // namespace detail

/// t_N = C(|G| - 1, N - 1) C(m - 1, N - 1).
inline BigInt t_n(std::uint64_t group_order, std::uint64_t m,
                  std::uint64_t n_support) {
  detail::check_range(group_order, m, n_support);
  return binomial(group_order - 1, n_support - 1) * binomial(m - 1, n_support - 1);
}

/// t(N, d) = C(|G|/d - 1, N/d - 1) C(m/d - 1, N/d - 1) = |St(H, m, N)| for
/// any H of order d.
inline BigInt t_n_d(std::uint64_t group_order, std::uint64_t m,
                    std::uint64_t n_support, std::uint64_t d) {
  if (d == 0 || n_support == 0 || m == 0 || group_order % d != 0 ||
      n_support % d != 0 || m % d != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "d = " + std::to_string(d) + " must divide N = " +
                    std::to_string(n_support) + ", m = " + std::to_string(m) +
                    " and |G| = " + std::to_string(group_order));
  }
  const std::uint64_t k = n_support / d - 1;
  return binomial(group_order / d - 1, k) * binomial(m / d - 1, k);
}

/// sbar(H) for each nontrivial H with |H| dividing gcd(m, N, |G|):
/// t(N, |H|) minus sbar(K) over the applicable K strictly containing H,
/// largest orders first.
inline std::map<Subgroup, BigInt> sbar_sizes(std::uint64_t group_order,
                                             const SubgroupLattice& lattice,
                                             std::uint64_t m,
                                             std::uint64_t n_support) {
  detail::check_range(group_order, m, n_support);
  const std::uint64_t g = std::gcd(std::gcd(m, n_support), group_order);

  std::vector<std::size_t> applicable;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const std::uint64_t d = lattice.subgroups()[i].order();
    if (d > 1 && g % d == 0) applicable.push_back(i);
  }

  std::map<std::size_t, BigInt> by_index;
  // the lattice is sorted by order, so walking backwards is largest-first
  for (auto it = applicable.rbegin(); it != applicable.rend(); ++it) {
    const std::size_t h = *it;
    BigInt value = t_n_d(group_order, m, n_support, lattice.subgroups()[h].order());
    for (const auto& [k, kv] : by_index) {
      if (k != h && lattice.contained_in(h, k)) value -= kv;
    }
    if (value < 0) {
      throw Error(ErrorKind::Internal,
                  "negative stabiliser count for a subgroup of order " +
                      std::to_string(lattice.subgroups()[h].order()));
    }
    by_index.emplace(h, std::move(value));
  }

  std::map<Subgroup, BigInt> out;
  for (auto& [i, v] : by_index) out.emplace(lattice.subgroups()[i], std::move(v));
  return out;
}

inline std::map<Subgroup, BigInt> sbar_sizes(const QuotientGroup& group,
                                             const SubgroupLattice& lattice,
                                             std::uint64_t m,
                                             std::uint64_t n_support) {
  return sbar_sizes(group.order(), lattice, m, n_support);
}

inline NCount count_for_n(std::uint64_t group_order, const SubgroupLattice& lattice,
                          std::uint64_t m, std::uint64_t n_support) {
  NCount out;
  out.t_n = t_n(group_order, m, n_support);
  out.sbar = sbar_sizes(group_order, lattice, m, n_support);
  BigInt weighted = out.t_n;
  for (const auto& [h, v] : out.sbar) weighted += (h.order() - 1) * v;
  out.classes = detail::exact_div(weighted, n_support, "T(N)");
  return out;
}

/// T(N): classes of St(1, m, G) whose support has N elements.
inline BigInt classes_for_n(const QuotientGroup& group, const SubgroupLattice& lattice,
                            std::uint64_t m, std::uint64_t n_support) {
  return count_for_n(group.order(), lattice, m, n_support).classes;
}

inline CountReport total_count(const QuotientGroup& group,
                               const SubgroupLattice& lattice, std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  CountReport report;
  report.m = m;
  report.total = 0;
  const std::uint64_t top = std::min<std::uint64_t>(m, group.order());
  for (std::uint64_t n = 1; n <= top; ++n) {
    NCount c = count_for_n(group.order(), lattice, m, n);
    report.total += c.classes;
    report.per_n.emplace(n, std::move(c));
  }
  return report;
}

/// When gcd(m, |G|) = 1 every orbit has full size and the total is
/// sum of t_N / N; otherwise nullopt.
inline std::optional<BigInt> coprime_shortcut(std::uint64_t group_order,
                                              std::uint64_t m) {
  if (std::gcd(m, group_order) != 1) return std::nullopt;
  BigInt total = 0;
  const std::uint64_t top = std::min(m, group_order);
  for (std::uint64_t n = 1; n <= top; ++n) {
    total += detail::exact_div(t_n(group_order, m, n), n, "t_N / N");
  }
  return total;
}

inline std::optional<BigInt> coprime_shortcut(const QuotientGroup& group,
                                              std::uint64_t m) {
  return coprime_shortcut(group.order(), m);
}

}  // namespace nearvec
