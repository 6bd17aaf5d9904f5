#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "subgroups.hpp"

namespace nearvec {

/// A multiset over G written as a non-decreasing list.
using Multiset = std::vector<GroupElement>;

/// A member of St(1, m, G): non-decreasing canonical representatives,
/// first entry 1.
class SuitableSequence {
 public:
  SuitableSequence() = default;

  /// Validates against G; throws Parse / InvalidElement on bad input.
  SuitableSequence(const QuotientGroup& g, Multiset entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) {
      throw Error(ErrorKind::InvalidArgument, "sequence must be non-empty");
    }
    for (GroupElement e : entries_) g.require(e);
    if (!std::is_sorted(entries_.begin(), entries_.end())) {
      throw Error(ErrorKind::Parse, "sequence is not non-decreasing");
    }
    if (entries_.front() != kIdentity) {
      throw Error(ErrorKind::Parse, "sequence must start with 1");
    }
  }

  SuitableSequence(const QuotientGroup& g, std::initializer_list<std::uint64_t> values)
      : SuitableSequence(g, to_multiset(values)) {}

  const Multiset& entries() const noexcept { return entries_; }
  std::size_t length() const noexcept { return entries_.size(); }
  GroupElement operator[](std::size_t i) const { return entries_[i]; }

  friend auto operator<=>(const SuitableSequence&, const SuitableSequence&) = default;
  friend bool operator==(const SuitableSequence&, const SuitableSequence&) = default;

 private:
  static Multiset to_multiset(std::initializer_list<std::uint64_t> values) {
    Multiset out;
    for (auto v : values) out.emplace_back(v);
    return out;
  }

  Multiset entries_;
};

/// Distinct entries of a sequence and how often each occurs.
struct SupportProfile {
  std::vector<GroupElement> support;
  std::vector<std::size_t> occurrences;

  std::size_t size() const noexcept { return support.size(); }

  std::size_t occurrence_of(GroupElement e) const {
    const auto it = std::lower_bound(support.begin(), support.end(), e);
    if (it == support.end() || *it != e) return 0;
    return occurrences[static_cast<std::size_t>(it - support.begin())];
  }
};

inline SupportProfile support_profile(std::span<const GroupElement> sorted) {
  SupportProfile prof;
  for (GroupElement e : sorted) {
    if (!prof.support.empty() && prof.support.back() == e) {
      ++prof.occurrences.back();
    } else {
      prof.support.push_back(e);
      prof.occurrences.push_back(1);
    }
  }
  return prof;
}

inline SupportProfile support_profile(const SuitableSequence& s) {
  return support_profile(std::span<const GroupElement>(s.entries()));
}

/// q(S): multiply every entry by q and re-sort.
inline Multiset scale(const QuotientGroup& g, GroupElement q,
                      std::span<const GroupElement> s) {
  Multiset out;
  out.reserve(s.size());
  for (GroupElement e : s) out.push_back(g.mul(q, e));
  std::sort(out.begin(), out.end());
  return out;
}

inline Multiset scale(const QuotientGroup& g, GroupElement q,
                      const SuitableSequence& s) {
  return scale(g, q, std::span<const GroupElement>(s.entries()));
}

/// Visits St(1, m, G) in lexicographic order without materialising it.
inline void for_each_st1(const QuotientGroup& g, std::size_t m,
                         const std::function<void(const Multiset&)>& visit) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  const auto& elems = g.elements();
  std::vector<std::size_t> idx(m, 0);
  Multiset current(m, kIdentity);
  while (true) {
    visit(current);
    // odometer over positions 1..m-1 keeping indices non-decreasing
    std::size_t pos = m;
    while (pos > 1 && idx[pos - 1] + 1 == elems.size()) --pos;
    if (pos == 1) return;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < m; ++i) {
      idx[i] = next;
      current[i] = elems[next];
    }
  }
}

inline std::vector<SuitableSequence> enumerate_st1(const QuotientGroup& g,
                                                   std::size_t m) {
  std::vector<SuitableSequence> out;
  for_each_st1(g, m, [&](const Multiset& s) { out.emplace_back(g, s); });
  return out;
}

/// Membership in St(H, m, N): the support is a union of H-cosets that
/// includes H, and entries in one coset share their occurrence count.
inline bool in_st_h(const QuotientGroup& g, const Subgroup& h,
                    const SuitableSequence& s) {
  const SupportProfile prof = support_profile(s);
  for (GroupElement x : h.elements) {
    if (prof.occurrence_of(x) == 0) return false;
  }
  for (std::size_t i = 0; i < prof.size(); ++i) {
    for (GroupElement x : h.elements) {
      if (prof.occurrence_of(g.mul(prof.support[i], x)) != prof.occurrences[i]) {
        return false;
      }
    }
  }
  return true;
}

/// As above, additionally requiring |support| = n_support.
inline bool in_st_h(const QuotientGroup& g, const Subgroup& h,
                    const SuitableSequence& s, std::size_t n_support) {
  return support_profile(s).size() == n_support && in_st_h(g, h, s);
}

// ---- text form -------------------------------------------------------------

inline std::string to_string(std::span<const GroupElement> s,
                             std::string_view sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) os << sep;
    os << s[i].value;
  }
  return os.str();
}

inline std::string to_string(const SuitableSequence& s,
                             std::string_view sep = ",") {
  return to_string(std::span<const GroupElement>(s.entries()), sep);
}

/// Splits "1,1,5,5" into integers. Whitespace around entries is ignored.
inline std::vector<std::uint64_t> parse_integers(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorKind::Parse,
                  "cannot parse sequence entry '" + std::string(tok) + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

/// Canonicalises each entry and sorts. Non-units are rejected; the result
/// must contain the identity class.
inline SuitableSequence normalize_sequence(const QuotientGroup& g,
                                           std::span<const std::uint64_t> values) {
  Multiset out;
  out.reserve(values.size());
  for (std::uint64_t v : values) out.push_back(g.canonical_rep(v));
  std::sort(out.begin(), out.end());
  if (out.empty() || out.front() != kIdentity) {
    throw Error(ErrorKind::Parse,
                "sequence has no entry in the identity class; only St(1,m,G) "
                "is supported");
  }
  return SuitableSequence(g, std::move(out));
}

/// Strict parser: input must already be a suitable sequence. The diagnostic
/// for a non-canonical or unsorted input names the normalised form.
inline SuitableSequence parse_sequence(const QuotientGroup& g,
                                       std::string_view text) {
  const std::vector<std::uint64_t> values = parse_integers(text);
  Multiset raw;
  bool canonical = true;
  for (std::uint64_t v : values) {
    raw.emplace_back(v);
    if (!g.contains(raw.back())) canonical = false;
  }
  if (canonical && std::is_sorted(raw.begin(), raw.end()) &&
      !raw.empty() && raw.front() == kIdentity) {
    return SuitableSequence(g, std::move(raw));
  }
  const SuitableSequence fixed = normalize_sequence(g, values);
  throw Error(ErrorKind::Parse, "'" + std::string(text) +
                                    "' is not a suitable sequence; normalized "
                                    "form is " + to_string(fixed));
}

}  // namespace nearvec
