#include <gtest/gtest.h>

#include <set>

#include "nearvec/nearvec.hpp"
#include "support.hpp"

using namespace nearvec;

namespace {

// Every subset containing the identity that is closed under products; finite,
// so closure alone makes it a subgroup.
std::set<std::vector<GroupElement>> subgroups_by_subsets(const QuotientGroup& g) {
  const auto& el = g.elements();
  const std::size_t k = el.size();
  std::set<std::vector<GroupElement>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); mask += 2) {
    bool closed = true;
    for (std::size_t i = 0; i < k && closed; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < k && closed; ++j) {
        if (!(mask >> j & 1)) continue;
        closed = mask >> g.index_of(g.mul(el[i], el[j])) & 1;
      }
    }
    if (!closed) continue;
    std::vector<GroupElement> subset;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) subset.push_back(el[i]);
    }
    out.insert(subset);
  }
  return out;
}

}  // namespace

TEST(Subgroups, LatticeMatchesSubsetEnumeration) {
  std::size_t groups = 0;
  for (const auto& [p, n] : nvtest::prime_powers(128)) {
    const QuotientGroup g(p, n);
    if (g.order() > 16) continue;
    ++groups;
    const auto expected = subgroups_by_subsets(g);
    const SubgroupLattice lat = all_subgroups(g);
    std::set<std::vector<GroupElement>> got;
    for (const Subgroup& h : lat.subgroups()) got.insert(h.elements);
    EXPECT_EQ(got, expected) << "p=" << p << " n=" << n;
    EXPECT_EQ(lat.size(), expected.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      for (std::size_t j = 0; j < lat.size(); ++j) {
        EXPECT_EQ(lat.contained_in(i, j),
                  lat.subgroups()[i].is_subset_of(lat.subgroups()[j]));
      }
    }
  }
  EXPECT_GT(groups, 20u);
}

TEST(Subgroups, CyclicAndKleinLattices) {
  const QuotientGroup g1(3, 3);
  const SubgroupLattice l1 = all_subgroups(g1);
  ASSERT_EQ(l1.size(), 3u);  // cyclic of order 4
  EXPECT_EQ(l1.of_order(2).front().elements,
            (std::vector<GroupElement>{GroupElement(1), GroupElement(17)}));
  EXPECT_EQ(l1.orders(), (std::vector<std::uint64_t>{1, 2, 4}));

  const QuotientGroup g2(5, 2);
  const SubgroupLattice l2 = all_subgroups(g2);
  EXPECT_EQ(l2.size(), 5u);  // Klein four
  EXPECT_EQ(l2.of_order(2).size(), 3u);
  EXPECT_EQ(containing_subgroups(l2, trivial_subgroup(), 2).size(), 3u);
}

TEST(Subgroups, Constructors) {
  const QuotientGroup g(3, 3);
  EXPECT_EQ(cyclic_subgroup(g, GroupElement(5)).order(), 4u);
  EXPECT_EQ(cyclic_subgroup(g, GroupElement(17)).order(), 2u);
  EXPECT_TRUE(is_subgroup(g, {GroupElement(1), GroupElement(17)}));
  EXPECT_FALSE(is_subgroup(g, {GroupElement(1), GroupElement(5)}));
  EXPECT_THROW(make_subgroup(g, {GroupElement(1), GroupElement(5)}), Error);
  EXPECT_EQ(whole_group(g).order(), 4u);

  const QuotientGroup g2(5, 2);
  const Subgroup a = cyclic_subgroup(g2, GroupElement(7));
  const Subgroup b = cyclic_subgroup(g2, GroupElement(13));
  EXPECT_EQ(product_subgroup(g2, a, b), whole_group(g2));
}

TEST(Subgroups, CosetsPartitionTheGroup) {
  for (const auto& [p, n] : nvtest::prime_powers(128)) {
    const QuotientGroup g(p, n);
    const SubgroupLattice lat = all_subgroups(g);
    for (const Subgroup& h : lat.subgroups()) {
      const auto cs = cosets(g, h);
      ASSERT_EQ(cs.size() * h.order(), g.order());
      std::set<GroupElement> seen;
      for (const auto& c : cs) {
        EXPECT_EQ(c.size(), h.order());
        for (GroupElement e : c) EXPECT_TRUE(seen.insert(e).second);
      }
      for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_LT(cs[i - 1].front(), cs[i].front());
    }
  }
  const QuotientGroup g(3, 3);
  EXPECT_THROW(cosets(g, Subgroup{{GroupElement(1), GroupElement(5)}}), Error);
}
