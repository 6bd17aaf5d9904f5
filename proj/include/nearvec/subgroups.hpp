#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace nearvec {

/// A subgroup of G stored as its sorted element list.
struct Subgroup {
  std::vector<GroupElement> elements;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(GroupElement e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
  }
  bool is_subset_of(const Subgroup& other) const {
    return std::includes(other.elements.begin(), other.elements.end(),
                         elements.begin(), elements.end());
  }
  bool trivial() const noexcept { return elements.size() == 1; }

  // order first, then elements, so sorted containers list small subgroups first
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// True when `elements` (any order, duplicates allowed) is a subgroup of G.
inline bool is_subgroup(const QuotientGroup& g,
                        std::vector<GroupElement> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != kIdentity) return false;
  for (GroupElement e : elements) {
    if (!g.contains(e)) return false;
  }
  // a finite nonempty subset closed under the product is a subgroup
  for (GroupElement a : elements) {
    for (GroupElement b : elements) {
      if (!std::binary_search(elements.begin(), elements.end(), g.mul(a, b))) {
        return false;
      }
    }
  }
  return true;
}

inline Subgroup make_subgroup(const QuotientGroup& g,
                              std::vector<GroupElement> elements) {
  if (!is_subgroup(g, elements)) {
    throw Error(ErrorKind::NotASubgroup, "element set is not a subgroup of G");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Subgroup{std::move(elements)};
}

inline Subgroup trivial_subgroup() { return Subgroup{{kIdentity}}; }

inline Subgroup whole_group(const QuotientGroup& g) {
  return Subgroup{g.elements()};
}

inline Subgroup cyclic_subgroup(const QuotientGroup& g, GroupElement gen) {
  std::vector<GroupElement> out{kIdentity};
  for (GroupElement x = g.mul(gen, kIdentity); x != kIdentity;
       x = g.mul(x, gen)) {
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return Subgroup{std::move(out)};
}

/// H1 H2 = { ab : a in H1, b in H2 }; a subgroup because G is abelian.
inline Subgroup product_subgroup(const QuotientGroup& g, const Subgroup& h1,
                                 const Subgroup& h2) {
  std::vector<GroupElement> out;
  out.reserve(h1.order() * h2.order());
  for (GroupElement a : h1.elements) {
    for (GroupElement b : h2.elements) out.push_back(g.mul(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Subgroup{std::move(out)};
}

/// The cosets qH, each sorted, ordered by least element. Their union is G.
inline std::vector<std::vector<GroupElement>> cosets(const QuotientGroup& g,
                                                     const Subgroup& h) {
  if (!is_subgroup(g, h.elements)) {
    throw Error(ErrorKind::NotASubgroup, "cosets: H is not a subgroup of G");
  }
  std::vector<std::vector<GroupElement>> out;
  std::set<GroupElement> seen;
  for (GroupElement q : g.elements()) {
    if (seen.count(q) != 0) continue;
    std::vector<GroupElement> coset;
    coset.reserve(h.order());
    for (GroupElement x : h.elements) coset.push_back(g.mul(q, x));
    std::sort(coset.begin(), coset.end());
    seen.insert(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

/// Every subgroup of an abelian G, grouped by order, with containment.
class SubgroupLattice {
 public:
  SubgroupLattice() = default;
  explicit SubgroupLattice(std::vector<Subgroup> subgroups)
      : all_(std::move(subgroups)) {
    std::sort(all_.begin(), all_.end());
    for (std::size_t i = 0; i < all_.size(); ++i) {
      by_order_[all_[i].order()].push_back(i);
    }
    const std::size_t k = all_.size();
    contained_.assign(k * k, false);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        contained_[i * k + j] = all_[i].is_subset_of(all_[j]);
      }
    }
  }

  /// All subgroups sorted by (order, elements).
  const std::vector<Subgroup>& subgroups() const noexcept { return all_; }
  std::size_t size() const noexcept { return all_.size(); }

  /// Subgroup orders present, ascending.
  std::vector<std::uint64_t> orders() const {
    std::vector<std::uint64_t> out;
    for (const auto& [d, _] : by_order_) out.push_back(d);
    return out;
  }

  std::vector<Subgroup> of_order(std::uint64_t d) const {
    std::vector<Subgroup> out;
    if (auto it = by_order_.find(d); it != by_order_.end()) {
      for (std::size_t i : it->second) out.push_back(all_[i]);
    }
    return out;
  }

  std::size_t index_of(const Subgroup& h) const {
    const auto it = std::lower_bound(all_.begin(), all_.end(), h);
    if (it == all_.end() || !(*it == h)) {
      throw Error(ErrorKind::NotASubgroup, "subgroup is not in the lattice");
    }
    return static_cast<std::size_t>(it - all_.begin());
  }

  /// True when subgroups()[i] is a subset of subgroups()[j].
  bool contained_in(std::size_t i, std::size_t j) const {
    return contained_[i * all_.size() + j];
  }

 private:
  std::vector<Subgroup> all_;
  std::map<std::uint64_t, std::vector<std::size_t>> by_order_;
  std::vector<bool> contained_;
};

/// Cyclic subgroups closed under pairwise products until nothing new appears.
inline SubgroupLattice all_subgroups(const QuotientGroup& g) {
  std::set<Subgroup> found;
  for (GroupElement e : g.elements()) found.insert(cyclic_subgroup(g, e));

  std::vector<Subgroup> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    const std::vector<Subgroup> snapshot(found.begin(), found.end());
    for (const Subgroup& a : frontier) {
      for (const Subgroup& b : snapshot) {
        if (a.is_subset_of(b) || b.is_subset_of(a)) continue;
        Subgroup joined = product_subgroup(g, a, b);
        if (found.insert(joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }
  return SubgroupLattice(std::vector<Subgroup>(found.begin(), found.end()));
}

inline std::vector<Subgroup> subgroups_of_order(const SubgroupLattice& lattice,
                                                std::uint64_t d) {
  return lattice.of_order(d);
}

/// Subgroups K of order `order` with H contained in K.
inline std::vector<Subgroup> containing_subgroups(const SubgroupLattice& lattice,
                                                  const Subgroup& h,
                                                  std::uint64_t order) {
  std::vector<Subgroup> out;
  for (const Subgroup& k : lattice.of_order(order)) {
    if (h.is_subset_of(k)) out.push_back(k);
  }
  return out;
}

}  // namespace nearvec
