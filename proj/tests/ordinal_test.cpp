#include "schreierlab/ordinal.hpp"

#include <gtest/gtest.h>

using namespace schreierlab;

namespace {

Ordinal w(std::uint32_t k = 1, std::uint64_t c = 1) { return Ordinal::omega_power(k, c); }
Ordinal n(std::uint64_t v) { return Ordinal::finite(v); }

}  // namespace

TEST(Ordinal, Compare) {
  EXPECT_EQ(cmp(w(), n(3)), Cmp::Greater);
  EXPECT_EQ(cmp(Ordinal::parse("w*2+1"), Ordinal::parse("w*3")), Cmp::Less);
  EXPECT_EQ(cmp(n(5), n(5)), Cmp::Equal);
  EXPECT_EQ(cmp(Ordinal::parse("w^2"), Ordinal::parse("w*100+7")), Cmp::Greater);
  EXPECT_EQ(cmp(Ordinal::parse("w+1"), w()), Cmp::Greater);
}

TEST(Ordinal, Classify) {
  EXPECT_EQ(classify(n(0)).kind, OrdinalKind::Zero);
  auto five = classify(n(5));
  ASSERT_EQ(five.kind, OrdinalKind::Successor);
  EXPECT_EQ(*five.pred, n(4));
  EXPECT_EQ(classify(Ordinal::parse("w^2+w")).kind, OrdinalKind::Limit);
  EXPECT_EQ(*classify(Ordinal::parse("w+1")).pred, w());
}

TEST(Ordinal, ClassifySuccessorRoundTrip) {
  for (const char* s : {"0", "3", "w", "w+4", "w^2*3+w*2", "w^3+1"}) {
    auto b = Ordinal::parse(s);
    auto c = classify(b.successor());
    ASSERT_EQ(c.kind, OrdinalKind::Successor) << s;
    EXPECT_EQ(*c.pred, b) << s;
  }
}

TEST(Ordinal, LambdaApprox) {
  EXPECT_EQ(lambda_approx(n(3), 7), n(2));
  EXPECT_EQ(lambda_approx(w(), 5), n(5));
  EXPECT_EQ(lambda_approx(w(2), 2), Ordinal::parse("w*2+1"));
  EXPECT_EQ(lambda_approx(Ordinal::parse("w^2+w"), 3), Ordinal::parse("w^2+3"));
  EXPECT_EQ(lambda_approx(Ordinal::parse("w^3*2"), 4), Ordinal::parse("w^3+w^2*4+1"));
  EXPECT_THROW(lambda_approx(n(0), 1), Error);
}

TEST(Ordinal, LambdaApproxIncreasesToLimit) {
  for (const char* s : {"w", "w*3", "w^2", "w^2*2+w", "w^3"}) {
    auto a = Ordinal::parse(s);
    for (std::uint64_t i = 1; i < 20; ++i) {
      auto li = lambda_approx(a, i);
      EXPECT_EQ(cmp(li, lambda_approx(a, i + 1)), Cmp::Less) << s << " " << i;
      EXPECT_EQ(cmp(li, a), Cmp::Less) << s;
      EXPECT_EQ(classify(li).kind, OrdinalKind::Successor) << s;
    }
  }
}

TEST(Ordinal, ParsePrintRoundTrip) {
  for (const char* s : {"0", "1", "17", "w", "w*2", "w^2", "w^2*3+w+4", "w^5*2+w^2+9"}) {
    EXPECT_EQ(Ordinal::parse(s).str(), s);
  }
  EXPECT_EQ(Ordinal::parse("w^2*3+w*1+4").str(), "w^2*3+w+4");
  EXPECT_EQ(Ordinal::parse("w^1").str(), "w");
  EXPECT_THROW(Ordinal::parse("w+w^2"), Error);
  EXPECT_THROW(Ordinal::parse("w*0"), Error);
  EXPECT_THROW(Ordinal::parse("x"), Error);
  EXPECT_THROW(Ordinal::parse("w+"), Error);
}
