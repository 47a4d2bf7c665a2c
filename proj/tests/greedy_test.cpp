#include "schreierlab/greedy.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace schreierlab;

namespace {

BlockVector vec(std::initializer_list<int> values) {
  std::vector<std::pair<Int, Rational>> e;
  int i = 1;
  for (int v : values) e.emplace_back(i++, Rational(v));
  return BlockVector::from_entries(e);
}

std::shared_ptr<const GaugeProfile> desk() {
  static auto g = std::make_shared<const GaugeProfile>(GaugeProfile::build(desk_params()));
  return g;
}

}  // namespace

TEST(Greedy, Examples) {
  auto x = vec({3, -5, 2});
  EXPECT_EQ(greedy_set(x, 1), FiniteSet::interval(2, 2));
  EXPECT_EQ(greedy_set(x, 2), FiniteSet::interval(1, 2));
  EXPECT_EQ(greedy_set(vec({1, 1}), 1), FiniteSet::interval(1, 1));
  EXPECT_EQ(greedy_approx(x, 1), BlockVector::from_entries({{Int(2), Rational(-5)}}));
  EXPECT_EQ(greedy_approx(x, 3), x);
  EXPECT_TRUE(greedy_residual(x, 3).is_zero());
  EXPECT_TRUE(greedy_approx(x, 0).is_zero());
  EXPECT_THROW(greedy_set(x, 4), Error);
}

TEST(Greedy, ValidGreedySetsAndExactSplit) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = detail::random_sparse(rng, 12, 40);
    // mix in a long constant block
    if (trial % 4 == 0) x = x.plus(BlockVector::constant(FiniteSet::interval(100, 150), Rational(1, 2)));
    for (Int m = 0; m <= x.support_size(); m += 1 + m / 4) {
      auto G = greedy_set(x, m);
      ASSERT_EQ(G.size(), m);
      Rational min_in = -1, max_out = 0;
      for (const auto& [i, v] : x.entries(1u << 12)) {
        if (G.contains(i)) min_in = min_in < 0 ? abs(v) : std::min(min_in, Rational(abs(v)));
        else max_out = std::max(max_out, Rational(abs(v)));
      }
      if (m > 0) ASSERT_GE(min_in, max_out);
      ASSERT_EQ(greedy_approx(x, m).plus(greedy_residual(x, m)), x);
    }
  }
}

TEST(Greedy, HugeConstantBlock) {
  Int big = Int(1) << 2000;
  auto x = BlockVector::constant(FiniteSet::interval(big, 2 * big), Rational(1)).plus(BlockVector::unit(3).scaled(2));
  auto G = greedy_set(x, big);
  EXPECT_TRUE(G.contains(3));
  EXPECT_EQ(G.size(), big);
  EXPECT_EQ(G.max(), 2 * big - 2);
}

TEST(Greedy, QuasiGreedyScansPass) {
  ScanConfig cfg;
  cfg.trials = 40;
  Space four = FourSpace(Ordinal::finite(1));
  auto r4 = qg_scan(four, cfg);
  EXPECT_TRUE(r4.ok()) << r4.summary().dump();
  EXPECT_LE(r4.max_ratio, 10);
  Space three = ThreeSpace(desk());
  auto r3 = qg_scan(three, cfg);
  EXPECT_TRUE(r3.ok()) << r3.summary().dump();
}

TEST(Greedy, ScansAreDeterministic) {
  ScanConfig cfg;
  cfg.trials = 15;
  Space four = FourSpace(Ordinal::finite(1));
  std::ostringstream a, b;
  qg_scan(four, cfg).write_csv(a);
  qg_scan(four, cfg).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Greedy, DemocracyAndUncondWitnesses) {
  ScanConfig cfg;
  cfg.trials = 20;
  Space four = FourSpace(Ordinal::finite(1));
  auto d = democracy_scan(four, Ordinal::finite(1), cfg);
  EXPECT_TRUE(d.ok()) << d.summary().dump();
  EXPECT_GT(*d.trend_slope, 0);
  auto u = uncond_scan(four, Ordinal::finite(1), cfg);
  EXPECT_TRUE(u.ok()) << u.summary().dump();
  EXPECT_GT(u.max_ratio, 1.8);
  Space three = ThreeSpace(desk());
  auto d3 = democracy_scan(three, Ordinal::finite(1), cfg);
  EXPECT_TRUE(d3.ok()) << d3.summary().dump();
  auto u3 = uncond_scan(three, Ordinal::finite(0), cfg);
  for (const auto& i : u3.instances)
    if (i.verdict != Verdict::Pass) ADD_FAILURE() << i.witness << " " << i.params.dump() << " " << decimal(i.value) << " vs " << decimal(i.bound);
}
