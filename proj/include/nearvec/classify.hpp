#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "group.hpp"
#include "number.hpp"
#include "sequences.hpp"

namespace nearvec {

/// Finite data for an isomorphism between the near-vector spaces of S1 and
/// S2: eta(s_alpha) = t_{alpha^q}, and
/// theta(x)_i = x_{sigma[i]}^{p^{frobenius_powers[i]}} (0-based positions).
struct IsomorphismWitness {
  GroupElement q;
  std::vector<std::size_t> sigma;
  std::vector<unsigned> frobenius_powers;

  friend bool operator==(const IsomorphismWitness&, const IsomorphismWitness&) = default;
};

/// Least q in support(S1) with S1 = q(S2) as multisets, if any.
inline std::optional<GroupElement> isomorphic(const QuotientGroup& g,
                                              const SuitableSequence& s1,
                                              const SuitableSequence& s2) {
  if (s1.length() != s2.length()) {
    throw Error(ErrorKind::LengthMismatch,
                "sequences have different lengths (" +
                    std::to_string(s1.length()) + " vs " +
                    std::to_string(s2.length()) + ")");
  }
  const SupportProfile p1 = support_profile(s1);
  const SupportProfile p2 = support_profile(s2);
  // cheap rejection: scaling preserves the multiset of occurrence counts
  auto o1 = p1.occurrences;
  auto o2 = p2.occurrences;
  std::sort(o1.begin(), o1.end());
  std::sort(o2.begin(), o2.end());
  if (o1 != o2) return std::nullopt;
  for (GroupElement q : p1.support) {
    if (scale(g, q, s2) == s1.entries()) return q;
  }
  return std::nullopt;
}

/// [(S)] = { q^{-1}(S) : q in support(S) }.
inline std::set<SuitableSequence> orbit(const QuotientGroup& g,
                                        const SuitableSequence& s) {
  std::set<SuitableSequence> out;
  for (GroupElement q : support_profile(s).support) {
    out.emplace(g, scale(g, g.inv(q), s));
  }
  return out;
}

/// Stabiliser { q in G : q(S) = S }; always a subgroup contained in support(S).
inline Subgroup stabilizer(const QuotientGroup& g, const SuitableSequence& s) {
  std::vector<GroupElement> out;
  for (GroupElement q : support_profile(s).support) {
    if (scale(g, q, s) == s.entries()) out.push_back(q);
  }
  return Subgroup{std::move(out)};
}

/// Checks the invariants of a witness for the pair (S1, S2).
inline bool witness_consistent(const QuotientGroup& g, const SuitableSequence& s1,
                               const SuitableSequence& s2,
                               const IsomorphismWitness& w) {
  const std::size_t m = s1.length();
  if (s2.length() != m || w.sigma.size() != m || w.frobenius_powers.size() != m) {
    return false;
  }
  if (!g.contains(w.q)) return false;
  const SupportProfile p1 = support_profile(s1);
  const SupportProfile p2 = support_profile(s2);
  if (p1.occurrence_of(w.q) == 0 || p2.occurrence_of(g.inv(w.q)) == 0) return false;

  std::vector<bool> hit(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (w.sigma[i] >= m || hit[w.sigma[i]]) return false;
    hit[w.sigma[i]] = true;
  }
  const GroupParams& params = g.params();
  const std::uint64_t mod = params.modulus();
  for (std::size_t i = 0; i < m; ++i) {
    const GroupElement target = s1[w.sigma[i]];
    if (g.mul(w.q, s2[i]) != target) return false;
    if (w.frobenius_powers[i] >= params.n()) return false;
    if (params.degenerate()) continue;
    const std::uint64_t ratio =
        mulmod(mulmod(w.q.value, s2[i].value, mod), *modinv(target.value, mod), mod);
    if (ratio != powmod(params.p(), w.frobenius_powers[i], mod)) return false;
  }
  return true;
}

/// Witness from the constructive half of the isomorphism criterion: the
/// occurrence block of each support element q'_k of S2 is sent, in order,
/// onto the block of q q'_k in S1; the Frobenius power at position i is
/// read off from q q'_i / q_{sigma(i)}, which lies in <p>.
inline IsomorphismWitness build_witness(const QuotientGroup& g,
                                        const SuitableSequence& s1,
                                        const SuitableSequence& s2,
                                        GroupElement q) {
  if (s1.length() != s2.length()) {
    throw Error(ErrorKind::LengthMismatch, "sequences have different lengths");
  }
  if (!g.contains(q) || scale(g, q, s2) != s1.entries()) {
    throw Error(ErrorKind::NotIsomorphic,
                "q = " + std::to_string(q.value) + " does not map (" +
                    to_string(s2) + ") onto (" + to_string(s1) + ")");
  }
  const std::size_t m = s1.length();
  const SupportProfile p1 = support_profile(s1);
  const SupportProfile p2 = support_profile(s2);

  // block offsets within S1: offset1[k] = sum of occurrences before block k
  std::vector<std::size_t> offset1(p1.size(), 0);
  for (std::size_t k = 1; k < p1.size(); ++k) {
    offset1[k] = offset1[k - 1] + p1.occurrences[k - 1];
  }

  IsomorphismWitness w{q, std::vector<std::size_t>(m), std::vector<unsigned>(m)};
  std::size_t i = 0;
  for (std::size_t k = 0; k < p2.size(); ++k) {
    const GroupElement image = g.mul(q, p2.support[k]);
    const auto rho = static_cast<std::size_t>(
        std::lower_bound(p1.support.begin(), p1.support.end(), image) -
        p1.support.begin());
    for (std::size_t j = 0; j < p2.occurrences[k]; ++j, ++i) {
      w.sigma[i] = offset1[rho] + j;
    }
  }

  const GroupParams& params = g.params();
  const std::uint64_t mod = params.modulus();
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (params.degenerate()) {
      w.frobenius_powers[pos] = 0;
      continue;
    }
    const std::uint64_t target = s1[w.sigma[pos]].value;
    const std::uint64_t ratio =
        mulmod(mulmod(q.value, s2[pos].value, mod), *modinv(target, mod), mod);
    w.frobenius_powers[pos] = frobenius_exponent(params, ratio);
  }
  if (!witness_consistent(g, s1, s2, w)) {
    throw Error(ErrorKind::Internal, "constructed witness violates its invariants");
  }
  return w;
}

/// The exponents p^{l_i} applied by theta at each position.
inline std::vector<std::uint64_t> frobenius_exponents(const GroupParams& params,
                                                      const IsomorphismWitness& w) {
  std::vector<std::uint64_t> out;
  out.reserve(w.frobenius_powers.size());
  for (unsigned l : w.frobenius_powers) out.push_back(*checked_pow(params.p(), l));
  return out;
}

// ---- brute-force classification ---------------------------------------------

struct ClassRecord {
  SuitableSequence representative;  // lexicographically least orbit member
  std::size_t orbit_size = 0;
  std::size_t support_size = 0;
};

struct ClassificationResult {
  std::size_t m = 0;
  std::vector<ClassRecord> classes;            // empty unless requested
  std::map<std::size_t, std::uint64_t> per_n;  // support size -> T(N)
  std::uint64_t total = 0;
  std::uint64_t sequences = 0;                 // |St(1, m, G)| visited
  std::map<std::size_t, std::uint64_t> sequences_per_n;  // |St(1, m, N)|
};

struct ClassifyOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool keep_classes = true;
};

namespace detail {

/// Element products on indices, tabulated when |G| is small enough.
class IndexProduct {
 public:
  explicit IndexProduct(const QuotientGroup& g) : g_(g), order_(g.order()) {
    if (order_ <= kTableLimit) table_ = g.cayley_table();
    inverse_.resize(order_);
    for (std::size_t i = 0; i < order_; ++i) {
      inverse_[i] = static_cast<std::uint32_t>(g.index_of(g.inv(g.elements()[i])));
    }
  }

  std::uint32_t operator()(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[a * order_ + b];
    return static_cast<std::uint32_t>(
        g_.index_of(g_.mul(g_.elements()[a], g_.elements()[b])));
  }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }

 private:
  static constexpr std::size_t kTableLimit = 2048;
  const QuotientGroup& g_;
  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

}  // namespace detail

/// Partitions St(1, m, G) into isomorphism classes by enumeration.
///
/// Every sequence is visited once in lexicographic order; a sequence is a
/// class representative exactly when no q^{-1}(S), q in support(S), is
/// lexicographically smaller. The orbit size is N / |Stab(S)|.
inline ClassificationResult brute_force_classes(const QuotientGroup& g,
                                                std::size_t m,
                                                const ClassifyOptions& opts = {}) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  const BigInt count = st1_size(g.order(), m);
  if (count > opts.budget) {
    throw BudgetError("|St(1," + std::to_string(m) + ",G)| = " + count.str() +
                          " exceeds the enumeration budget of " +
                          std::to_string(opts.budget),
                      count > UINT64_MAX ? UINT64_MAX
                                         : static_cast<std::uint64_t>(count),
                      opts.budget);
  }

  ClassificationResult result;
  result.m = m;
  const auto order = static_cast<std::uint32_t>(g.order());
  const detail::IndexProduct prod(g);

  std::vector<std::uint32_t> seq(m, 0), scaled(m), support;
  support.reserve(m);
  while (true) {
    ++result.sequences;
    support.clear();
    for (std::uint32_t v : seq) {
      if (support.empty() || support.back() != v) support.push_back(v);
    }
    ++result.sequences_per_n[support.size()];
    bool representative = true;
    std::size_t stabilizer = 1;  // q = 1 always fixes S
    for (std::size_t k = 1; k < support.size() && representative; ++k) {
      const std::uint32_t qinv = prod.inverse(support[k]);
      for (std::size_t i = 0; i < m; ++i) scaled[i] = prod(qinv, seq[i]);
      std::sort(scaled.begin(), scaled.end());
      const auto cmp = std::lexicographical_compare_three_way(
          scaled.begin(), scaled.end(), seq.begin(), seq.end());
      if (cmp < 0) {
        representative = false;
      } else if (cmp == 0) {
        ++stabilizer;
      }
    }
    if (representative) {
      const std::size_t n_support = support.size();
      if (n_support % stabilizer != 0) {
        throw Error(ErrorKind::Internal, "stabiliser order does not divide N");
      }
      ++result.per_n[n_support];
      ++result.total;
      if (opts.keep_classes) {
        Multiset entries;
        entries.reserve(m);
        for (std::uint32_t v : seq) entries.push_back(g.elements()[v]);
        result.classes.push_back(
            {SuitableSequence(g, std::move(entries)), n_support / stabilizer, n_support});
      }
    }

    std::size_t pos = m;
    while (pos > 1 && seq[pos - 1] + 1 == order) --pos;
    if (pos == 1) break;
    const std::uint32_t next = seq[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < m; ++i) seq[i] = next;
  }
  return result;
}

}  // namespace nearvec
