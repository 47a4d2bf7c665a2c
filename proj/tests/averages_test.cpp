#include "schreierlab/averages.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace schreierlab;

namespace {

Ordinal ord(const char* s) { return Ordinal::parse(s); }

std::vector<Rational> weights(const RepeatedAverage& x) {
  std::vector<Rational> out;
  for (const auto& e : x.support().elements()) out.push_back(x.weight_at(e));
  return out;
}

Rational q(long n, long d) { return Rational(n) / Rational(d); }

}  // namespace

TEST(Averages, Examples) {
  auto unit = repeated_average(ord("0"), FiniteSet{7});
  EXPECT_EQ(weights(unit), (std::vector<Rational>{1}));
  EXPECT_EQ(weights(repeated_average(ord("1"), FiniteSet::interval(2, 3))),
            (std::vector<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_EQ(weights(repeated_average(ord("2"), FiniteSet::interval(2, 7))),
            (std::vector<Rational>{q(1, 4), q(1, 4), q(1, 8), q(1, 8), q(1, 8), q(1, 8)}));
  EXPECT_THROW(repeated_average(ord("2"), FiniteSet::interval(2, 6)), Error);
}

TEST(Averages, Along) {
  auto two = averages_along(ord("1"), 2, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].support(), FiniteSet::interval(2, 3));
  EXPECT_EQ(two[1].support(), FiniteSet::interval(4, 7));
  EXPECT_EQ(two[1].first_weight(), q(1, 4));
  auto first = averages_along(ord("1"), 1, 1);
  EXPECT_EQ(weights(first[0]), (std::vector<Rational>{1}));
  auto order2 = averages_along(ord("2"), 2, 1);
  EXPECT_EQ(order2[0].runs(), repeated_average(ord("2"), FiniteSet::interval(2, 7)).runs());
}

TEST(Averages, BlockSumExamples) {
  auto blocks = averages_along(ord("1"), 2, 2);
  EXPECT_EQ(block_sum(ord("1"), blocks, FiniteSet{3, 4, 5}), 1);
  EXPECT_EQ(block_sum(ord("1"), {blocks[1]}, FiniteSet::interval(4, 7)), 1);
  EXPECT_EQ(block_sum(ord("1"), blocks, FiniteSet{}), 0);
  EXPECT_THROW(block_sum(ord("1"), blocks, FiniteSet{2, 3, 4}), Error);
}

TEST(Averages, HugeBlockIsRunLength) {
  auto x = repeated_average(ord("2"), partition_block(ord("2"), 500, 1));
  EXPECT_TRUE(x.invariant_violation().empty());
  EXPECT_EQ(x.runs().size(), 500u);
  EXPECT_EQ(x.first_weight(), q(1, 500 * 500));
}

TEST(Averages, InvariantsOnEveryConstruction) {
  for (const char* s : {"1", "2", "3", "w", "w+1", "w*2", "w^2"}) {
    for (int m = 1; m <= 5; ++m) {
      std::vector<RepeatedAverage> xs;
      try {
        xs = averages_along(ord(s), m, 3);
      } catch (const Error& e) {
        ASSERT_TRUE(e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::CapExceeded) << e.what();
        continue;
      }
      for (std::size_t j = 0; j < xs.size(); ++j) {
        EXPECT_TRUE(xs[j].invariant_violation().empty()) << s << " " << xs[j].invariant_violation();
        EXPECT_LE(xs[j].last_weight() * Rational(xs[j].support().size()), 1) << s;
        if (j + 1 < xs.size()) EXPECT_GE(xs[j].last_weight(), xs[j + 1].first_weight()) << s;
      }
    }
  }
  EXPECT_EQ(average_audit().violations.load(), 0u) << average_audit().first_violation;
  EXPECT_GT(average_audit().partition_checks.load(), 0u);
}

TEST(Averages, BlockSumAtMostSixRandomized) {
  std::mt19937 rng(3);
  for (const char* s : {"1", "2"}) {
    Ordinal a = ord(s);
    for (int trial = 0; trial < 400; ++trial) {
      int m = std::uniform_int_distribution<int>(1, 4)(rng);
      int count = std::uniform_int_distribution<int>(1, a == ord("1") ? 5 : 2)(rng);
      auto blocks = averages_along(a, m, count);
      Int hi = blocks.back().support().max();
      if (hi > 400) hi = 400;
      // random subset of [1, hi] trimmed to its longest S_a prefix
      std::vector<Int> elems;
      for (Int i = 1; i <= hi; ++i)
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) elems.push_back(i);
      auto F = FiniteSet::from_elements(elems);
      std::size_t keep = 0;
      while (keep < elems.size() && is_member(F.slice(0, keep + 1), a)) ++keep;
      F = F.slice(0, keep);
      ASSERT_LE(block_sum(a, blocks, F), 6) << s << " " << F.str();
    }
  }
}

TEST(Averages, JsonShape) {
  auto j = repeated_average(ord("2"), FiniteSet::interval(2, 7)).to_json();
  EXPECT_EQ(j["alpha"], "2");
  EXPECT_EQ(j["rle"].size(), 2u);
  EXPECT_EQ(j["rle"][1][2], "1/8");
}
