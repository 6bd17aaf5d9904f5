#include <gtest/gtest.h>

#include "nearvec/nearvec.hpp"
#include "support.hpp"

using namespace nearvec;

TEST(Number, UnitGroupMatchesGcdFilter) {
  for (std::uint64_t m = 1; m <= 300; ++m) {
    std::vector<std::uint64_t> expected;
    if (m == 1) {
      expected = {1};
    } else {
      for (std::uint64_t u = 1; u < m; ++u) {
        if (nvtest::gcd_slow(u, m) == 1) expected.push_back(u);
      }
    }
    EXPECT_EQ(unit_group(m), expected) << "m = " << m;
    EXPECT_EQ(euler_phi(m), m == 1 ? 1 : expected.size()) << "m = " << m;
  }
  EXPECT_THROW(unit_group(0), Error);
}

TEST(Number, ModularHelpers) {
  EXPECT_EQ(powmod(3, 3, 26), 1u);
  EXPECT_EQ(*modinv(5, 26), 21u);
  EXPECT_FALSE(modinv(2, 26).has_value());
  EXPECT_TRUE(is_prime(127));
  EXPECT_FALSE(is_prime(121));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_FALSE(checked_pow(2, 64).has_value());
}

TEST(GroupParams, Validation) {
  EXPECT_THROW(GroupParams(4, 2), Error);
  EXPECT_THROW(GroupParams(3, 0), Error);
  EXPECT_THROW(GroupParams(2, 40), Error);
  EXPECT_NO_THROW(GroupParams(2, 31));
  const GroupParams g(3, 3);
  EXPECT_EQ(g.modulus(), 26u);
  EXPECT_EQ(g.field_order(), 27u);
  EXPECT_FALSE(g.degenerate());
  EXPECT_TRUE(GroupParams(2, 1).degenerate());
}

TEST(PCoset, Examples) {
  EXPECT_EQ(p_coset(GroupParams(3, 3)), (std::vector<std::uint64_t>{1, 3, 9}));
  EXPECT_EQ(p_coset(GroupParams(5, 2)), (std::vector<std::uint64_t>{1, 5}));
  EXPECT_EQ(p_coset(GroupParams(7, 1)), (std::vector<std::uint64_t>{1}));
  EXPECT_THROW(p_coset(GroupParams(2, 1)), Error);
}

TEST(QuotientGroup, OrderFourExamples) {
  const QuotientGroup g1(3, 3);
  std::vector<GroupElement> e1{GroupElement(1), GroupElement(5), GroupElement(7),
                               GroupElement(17)};
  EXPECT_EQ(g1.elements(), e1);
  EXPECT_EQ(g1.mul(GroupElement(5), GroupElement(5)), GroupElement(17));
  EXPECT_EQ(g1.mul(GroupElement(7), GroupElement(7)), GroupElement(17));
  EXPECT_EQ(g1.inv(GroupElement(5)), GroupElement(7));
  EXPECT_EQ(g1.canonical_rep(15), GroupElement(5));
  EXPECT_EQ(g1.canonical_rep(21), GroupElement(7));
  EXPECT_THROW(g1.canonical_rep(2), Error);
  EXPECT_THROW(g1.require(GroupElement(3)), Error);

  const QuotientGroup g2(5, 2);
  std::vector<GroupElement> e2{GroupElement(1), GroupElement(7), GroupElement(13),
                               GroupElement(19)};
  EXPECT_EQ(g2.elements(), e2);
  for (GroupElement x : e2) EXPECT_EQ(g2.mul(x, x), kIdentity);
}

TEST(QuotientGroup, Degenerate) {
  const QuotientGroup g(2, 1);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.elements().front(), kIdentity);
  EXPECT_EQ(g.mul(kIdentity, kIdentity), kIdentity);
  EXPECT_EQ(frobenius_exponent(g.params(), 1), 0u);
}

TEST(QuotientGroup, ElementsMatchDefinitionAndObeyGroupLaws) {
  for (const auto& [p, n] : nvtest::prime_powers(128)) {
    const QuotientGroup g(p, n);
    const auto expected = nvtest::classes_by_definition(p, n);
    std::vector<std::uint64_t> got;
    for (GroupElement e : g.elements()) got.push_back(e.value);
    ASSERT_EQ(got, std::vector<std::uint64_t>(expected.begin(), expected.end()))
        << "p=" << p << " n=" << n;
    EXPECT_EQ(g.order(), g.params().degenerate() ? 1 : euler_phi(g.modulus()) / n);

    const auto& el = g.elements();
    for (GroupElement a : el) {
      EXPECT_EQ(g.mul(a, kIdentity), a);
      EXPECT_EQ(g.mul(a, g.inv(a)), kIdentity);
      EXPECT_EQ(g.pow(a, g.element_order(a)), kIdentity);
      EXPECT_EQ(g.order() % g.element_order(a), 0u);
      for (GroupElement b : el) {
        const GroupElement ab = g.mul(a, b);
        EXPECT_TRUE(g.contains(ab));
        EXPECT_EQ(ab, g.mul(b, a));
        if (g.order() <= 16) {
          for (GroupElement c : el) EXPECT_EQ(g.mul(ab, c), g.mul(a, g.mul(b, c)));
        }
      }
    }
  }
}

TEST(QuotientGroup, CayleyTableIndexesElements) {
  const QuotientGroup g(5, 2);
  const auto table = g.cayley_table();
  ASSERT_EQ(table.size(), 16u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(g.elements()[table[i * 4 + j]], g.mul(g.elements()[i], g.elements()[j]));
    }
  }
}

TEST(Frobenius, Exponent) {
  const GroupParams g(3, 3);
  EXPECT_EQ(frobenius_exponent(g, 1), 0u);
  EXPECT_EQ(frobenius_exponent(g, 3), 1u);
  EXPECT_EQ(frobenius_exponent(g, 9), 2u);
  EXPECT_EQ(frobenius_exponent(g, 35), 2u);  // 35 = 9 mod 26
  EXPECT_THROW(frobenius_exponent(g, 5), Error);
  EXPECT_THROW(frobenius_exponent(g, 2), Error);
  try {
    frobenius_exponent(g, 5);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInPCoset);
  }
}
