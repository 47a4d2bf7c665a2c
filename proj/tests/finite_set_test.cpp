#include "schreierlab/finite_set.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace schreierlab;

TEST(FiniteSet, IntervalsMergeAndRank) {
  FiniteSet s{2, 3, 4, 9, 10, 20};
  ASSERT_EQ(s.intervals().size(), 3u);
  EXPECT_EQ(s.size(), 6);
  EXPECT_EQ(s.min(), 2);
  EXPECT_EQ(s.max(), 20);
  EXPECT_EQ(s.at(3), 9);
  EXPECT_EQ(s.rank_of(9), 3);
  EXPECT_EQ(s.rank_of(15), 5);
  EXPECT_TRUE(s.contains(10));
  EXPECT_FALSE(s.contains(11));
  EXPECT_EQ(s.slice(1, 4), (FiniteSet{3, 4, 9}));
  EXPECT_EQ(s.count_in(3, 10), 4);
}

TEST(FiniteSet, HugeInterval) {
  Int lo = Int(500) << 500;
  auto s = FiniteSet::interval(lo, 2 * lo - 1);
  EXPECT_EQ(s.size(), lo);
  EXPECT_EQ(s.at(lo - 1), 2 * lo - 1);
  EXPECT_EQ(s.slice(5, 7).size(), 2);
}

TEST(FiniteSet, ParseAndPrint) {
  EXPECT_EQ(FiniteSet::parse("2,4,6"), (FiniteSet{2, 4, 6}));
  EXPECT_EQ(FiniteSet::parse("[2,7]"), FiniteSet::interval(2, 7));
  EXPECT_EQ(FiniteSet::parse("1,[5,9],12").size(), 7);
  EXPECT_EQ(FiniteSet::parse("{}").size(), 0);
  EXPECT_EQ(FiniteSet::parse(FiniteSet::parse("1,[5,9],12").str()), FiniteSet::parse("1,[5,9],12"));
  EXPECT_THROW(FiniteSet::parse("3,2"), Error);
  EXPECT_THROW(FiniteSet::parse("[4,2]"), Error);
  EXPECT_THROW(FiniteSet{0}, Error);
}

TEST(FiniteSet, SliceMatchesElementsProperty) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Int> elems;
    long long x = 0;
    int len = std::uniform_int_distribution<int>(0, 15)(rng);
    for (int i = 0; i < len; ++i) {
      x += std::uniform_int_distribution<int>(1, 3)(rng);
      elems.emplace_back(x);
    }
    auto s = FiniteSet::from_elements(elems);
    ASSERT_EQ(s.elements(), elems);
    for (std::size_t a = 0; a <= elems.size(); ++a)
      for (std::size_t b = a; b <= elems.size(); ++b) {
        std::vector<Int> want(elems.begin() + a, elems.begin() + b);
        ASSERT_EQ(s.slice(a, b).elements(), want);
      }
    for (long long v = 0; v <= x + 1; ++v) {
      long long below = std::count_if(elems.begin(), elems.end(), [&](const Int& e) { return e < v; });
      ASSERT_EQ(s.rank_of(v), below);
    }
  }
}
