#include "schreierlab/space_four.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace schreierlab;

namespace {

Ordinal ord(const char* s) { return Ordinal::parse(s); }

Real harmonic_root_sum(std::uint64_t N) {
  Real s = 0;
  for (std::uint64_t j = 1; j <= N; ++j) s += 1 / sqrt(Real(j));
  return s;
}

bool close(const Real& a, const Real& b, double rel = 1e-9) { return abs(a - b) <= rel * std::max(Real(1), Real(abs(b))); }

// Definition-literal partial-sum seminorm for small dense vectors.
Real literal_seminorm2(const FourSpace& X, const std::map<long, Rational>& x, long max_index) {
  std::vector<FiniteSet> F;
  std::vector<RepeatedAverage> avg;
  for (std::uint64_t j = 1;; ++j) {
    F.push_back(X.f_block(j));
    avg.push_back(repeated_average(X.alpha(), F.back()));
    if (F.back().max() >= max_index) break;
  }
  Real best = 0;
  for (long N = 1; N <= static_cast<long>(F.size()); ++N)
    for (long i0 = 1; i0 <= max_index + 1; ++i0) {
      Real total = 0;
      for (long j = N; j <= 2 * N - 1 && j <= static_cast<long>(F.size()); ++j) {
        Rational inner = 0;
        for (const auto& [i, v] : x)
          if (i <= i0 && F[j - 1].contains(i)) inner += avg[j - 1].weight_at(i) * v;
        total += to_real(abs(inner)) / sqrt(Real(j - N + 1));
      }
      best = std::max(best, total);
    }
  return best;
}

}  // namespace

TEST(FourSpace, BlocksForOrderOne) {
  FourSpace X(ord("1"));
  EXPECT_EQ(X.f_block(1), FiniteSet::interval(1, 1));
  EXPECT_EQ(X.f_block(3), FiniteSet::interval(4, 7));
  EXPECT_EQ(X.f_block(10), FiniteSet::interval(512, 1023));
}

TEST(FourSpace, UnitVectors) {
  FourSpace X(ord("1"));
  EXPECT_TRUE(close(X.seminorm1(BlockVector::unit(5)), Real(0.5)));
  for (int i = 1; i < 40; ++i) EXPECT_TRUE(close(X.norm(BlockVector::unit(i)).value, Real(1))) << i;
  EXPECT_EQ(X.norm(BlockVector()).value, 0);
}

TEST(FourSpace, EBlockNormIsRootHarmonicSum) {
  FourSpace X(ord("1"));
  auto n4 = X.norm(X.e_block(4));
  EXPECT_TRUE(close(n4.value, harmonic_root_sum(4)));
  EXPECT_EQ(n4.component, "2");
  EXPECT_TRUE(close(X.seminorm1(X.e_block(4)), Real(2)));
  for (std::uint64_t N = 1; N <= 12; ++N) {
    Real v = X.norm(X.e_block(N)).value;
    EXPECT_TRUE(close(v, harmonic_root_sum(N))) << N;
    EXPECT_GE(v, sqrt(Real(N)));
  }
}

TEST(FourSpace, AlternatingWitnessStaysBounded) {
  FourSpace X(ord("1"));
  Real prev = 0;
  for (std::uint64_t N = 4; N <= 16; ++N) {
    auto x = X.xy_block(N, true);
    auto y = X.xy_block(N, false);
    Real nx = X.norm(x).value, ny = X.norm(y).value;
    Real H = 0;
    for (std::uint64_t j = 1; j <= N; ++j) H += Real(1) / j;
    EXPECT_TRUE(close(nx, sqrt(H))) << N;
    EXPECT_LT(X.seminorm2(x), 3);
    EXPECT_GT(ny / nx, prev);
    prev = ny / nx;
  }
  EXPECT_GT(prev, 1.8);
}

TEST(FourSpace, PartialSumSeminormMatchesDefinition) {
  std::mt19937 rng(21);
  for (const char* a : {"1", "2"}) {
    FourSpace X(ord(a));
    for (int trial = 0; trial < 40; ++trial) {
      std::map<long, Rational> dense;
      std::vector<std::pair<Int, Rational>> entries;
      int k = std::uniform_int_distribution<int>(1, 6)(rng);
      for (int t = 0; t < k; ++t) {
        long i = std::uniform_int_distribution<long>(1, 40)(rng);
        if (dense.count(i)) continue;
        Rational v(std::uniform_int_distribution<int>(-6, 6)(rng) | 1, std::uniform_int_distribution<int>(1, 3)(rng));
        dense[i] = v;
        entries.emplace_back(i, v);
      }
      auto x = BlockVector::from_entries(entries);
      ASSERT_TRUE(eq_within(X.seminorm2(x), literal_seminorm2(X, dense, 40))) << a << " " << x.str();
    }
  }
}

TEST(FourSpace, SchreierSetsOfMatchingSizeStayBelowSix) {
  FourSpace X(ord("1"));
  std::mt19937 rng(8);
  for (std::uint64_t N = 1; N <= 12; ++N) {
    Int size = X.e_block(N).support_size();
    for (int trial = 0; trial < 5; ++trial) {
      // a random S_1 set of the same size: a few intervals above min >= size
      Int lo = size + std::uniform_int_distribution<int>(0, 1000)(rng);
      std::vector<Interval> ivs;
      Int left = size, at = lo;
      while (left > 0) {
        Int len = std::min(left, Int(std::uniform_int_distribution<long>(1, 1 + static_cast<long>(size / 3))(rng)));
        ivs.push_back({at, at + len - 1});
        at += len + std::uniform_int_distribution<int>(1, 50)(rng);
        left -= len;
      }
      auto A = BlockVector::indicator(FiniteSet::from_intervals(ivs));
      EXPECT_LE(X.norm(A).value, 6) << N;
    }
  }
}

TEST(FourSpace, ExtraSeminorm) {
  FourSpace X(ord("2"), ord("0"), {Int(2)}, {Int(3)});
  EXPECT_EQ(X.extra_set(1), FiniteSet::interval(2, 3));
  EXPECT_EQ(X.seminorm_beta(X.a_block(1)), 2);
  EXPECT_EQ(X.norm(X.a_block(1)).component, "beta");
  EXPECT_EQ(X.seminorm_beta(BlockVector::unit(100)), 0);
  // singletons have norm at most 6 (here exactly 1)
  for (int i = 1; i < 30; ++i) EXPECT_LE(X.norm(BlockVector::unit(i)).value, 6);
}

TEST(FourSpace, RejectsBadSequences) {
  EXPECT_THROW(FourSpace(ord("2"), ord("0"), {Int(1)}, {Int(2)}), Error);  // 2 < min F_2 fails
  EXPECT_THROW(FourSpace(ord("2"), ord("0"), {Int(2), Int(5)}, {Int(3), Int(6)}), Error);
  EXPECT_THROW(FourSpace(ord("1"), ord("0"), {Int(3)}, {Int(3)}), Error);
  Limits tight = limits();
  tight.digit_cap = 700;
  LimitsScope scope(tight);
  try {
    FourSpace(ord("2"), ord("0"), {Int(2), Int(6)}, {Int(3), Int(7)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
