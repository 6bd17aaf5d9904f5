#include <gtest/gtest.h>

#include "nearvec/nearvec.hpp"
#include "support.hpp"

using namespace nearvec;

TEST(Sequences, Construction) {
  const QuotientGroup g(3, 3);
  const SuitableSequence s(g, {1, 1, 5, 5});
  EXPECT_EQ(s.length(), 4u);
  EXPECT_EQ(to_string(s), "1,1,5,5");
  EXPECT_THROW(SuitableSequence(g, {5, 1}), Error);   // unsorted
  EXPECT_THROW(SuitableSequence(g, {1, 3}), Error);   // not canonical
  EXPECT_THROW(SuitableSequence(g, {5, 7}), Error);   // no identity
  EXPECT_THROW(SuitableSequence(g, {1, 2}), Error);   // not a unit
}

TEST(Sequences, SupportProfile) {
  const QuotientGroup g(3, 3);
  const auto prof = support_profile(SuitableSequence(g, {1, 1, 5, 17, 17, 17}));
  EXPECT_EQ(prof.support,
            (std::vector<GroupElement>{GroupElement(1), GroupElement(5), GroupElement(17)}));
  EXPECT_EQ(prof.occurrences, (std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(prof.occurrence_of(GroupElement(7)), 0u);
}

TEST(Sequences, Scale) {
  const QuotientGroup g(3, 3);
  const SuitableSequence s(g, {1, 5});
  EXPECT_EQ(scale(g, GroupElement(7), s), (Multiset{GroupElement(1), GroupElement(7)}));
  EXPECT_EQ(scale(g, GroupElement(17), SuitableSequence(g, {1, 17})),
            (Multiset{GroupElement(1), GroupElement(17)}));
}

TEST(Sequences, EnumerationSizeAndOrder) {
  for (const auto& [p, n] : nvtest::prime_powers(32)) {
    const QuotientGroup g(p, n);
    for (std::size_t m = 1; m <= 5; ++m) {
      const auto all = enumerate_st1(g, m);
      EXPECT_EQ(BigInt(all.size()), st1_size(g.order(), m)) << p << "^" << n << " m=" << m;
      for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1], all[i]);
      for (const auto& s : all) EXPECT_EQ(s[0], kIdentity);
    }
  }
  const QuotientGroup g(3, 3);
  EXPECT_EQ(enumerate_st1(g, 2).size(), 4u);
  EXPECT_THROW(enumerate_st1(g, 0), Error);
}

TEST(Sequences, StH) {
  const QuotientGroup g(3, 3);
  const Subgroup h{{GroupElement(1), GroupElement(17)}};
  EXPECT_TRUE(in_st_h(g, h, SuitableSequence(g, {1, 1, 17, 17})));
  EXPECT_FALSE(in_st_h(g, h, SuitableSequence(g, {1, 1, 17})));
  EXPECT_TRUE(in_st_h(g, h, SuitableSequence(g, {1, 5, 7, 17})));
  EXPECT_FALSE(in_st_h(g, h, SuitableSequence(g, {1, 5, 7, 17}), 2));
  EXPECT_TRUE(in_st_h(g, trivial_subgroup(), SuitableSequence(g, {1, 5})));
}

TEST(Sequences, Parsing) {
  const QuotientGroup g(3, 3);
  EXPECT_EQ(parse_integers(" 1, 1 ,5,5"), (std::vector<std::uint64_t>{1, 1, 5, 5}));
  EXPECT_THROW(parse_integers("1,,5"), Error);
  EXPECT_THROW(parse_integers("1,x"), Error);
  EXPECT_EQ(parse_sequence(g, "1,1,5,5"), SuitableSequence(g, {1, 1, 5, 5}));
  try {
    parse_sequence(g, "15,1");
    FAIL() << "non-canonical input accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("1,5"), std::string::npos);
  }
  const std::vector<std::uint64_t> raw{21, 3, 17};
  EXPECT_EQ(normalize_sequence(g, raw), SuitableSequence(g, {1, 7, 17}));
  EXPECT_THROW(parse_sequence(g, "1,2"), Error);
}
