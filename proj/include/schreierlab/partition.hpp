#pragma once

#include "schreierlab/averages.hpp"
#include "schreierlab/block_vector.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace schreierlab {

/// The partition [m, oo) = A(a,m,1) u A(a,m,2) u ... into consecutive
/// maximal S_a intervals, extended lazily and with cached averages.
class Partition {
 public:
  Partition(Ordinal a, Int m) : a_(std::move(a)) { starts_.push_back(std::move(m)); }

  const Ordinal& order() const { return a_; }
  const Int& anchor() const { return starts_.front(); }

  /// s_{(a,m)}(k).
  const Int& start(std::uint64_t k) const {
    std::lock_guard lock(mutex_);
    extend_to(k);
    return starts_[k];
  }

  /// A(a, m, k), k >= 1.
  FiniteSet block(std::uint64_t k) const {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "partition blocks are 1-based");
    return FiniteSet::interval(start(k - 1), start(k) - 1);
  }

  /// Index k of the block containing i >= m, or 0 when i lies past block
  /// kmax. Only the boundaries up to the answer are computed.
  std::uint64_t index_of(const Int& i, std::uint64_t kmax = UINT64_MAX) const {
    if (i < anchor()) throw Error(ErrorKind::InvalidArgument, i.str() + " precedes the partition anchor");
    std::lock_guard lock(mutex_);
    while (starts_.back() <= i) {
      if (starts_.size() > kmax) return 0;
      extend_to(starts_.size());
    }
    auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
    auto k = static_cast<std::uint64_t>(it - starts_.begin());
    return k <= kmax ? k : 0;
  }

  const RepeatedAverage& average(std::uint64_t k) const {
    {
      std::lock_guard lock(mutex_);
      auto it = averages_.find(k);
      if (it != averages_.end()) return it->second;
    }
    auto avg = repeated_average(a_, block(k));
    std::lock_guard lock(mutex_);
    return averages_.emplace(k, std::move(avg)).first->second;
  }

 private:
  void extend_to(std::uint64_t k) const {
    while (starts_.size() <= k) starts_.push_back(gamma(a_, starts_.back()));
  }

  Ordinal a_;
  mutable std::vector<Int> starts_;
  mutable std::map<std::uint64_t, RepeatedAverage> averages_;
  mutable std::mutex mutex_;
};

/// Sum_i w(i) f(x_i) over a weight profile, for f = x, |x|, x^2.
struct WeightedSums {
  Rational sum = 0;
  Rational abs_sum = 0;
  Rational sq_sum = 0;
};

/// Extremes of the partial sums P(i0) = sum_{i <= i0} w(i) x_i over all i0,
/// including the empty prefix, and the full sum.
struct PartialRange {
  Rational min = 0;
  Rational max = 0;
  Rational full = 0;
};

namespace detail {

// Calls f(lo, hi, weight, block) for every maximal piece on which both the
// weight and the block pattern are fixed, in increasing order.
template <class F>
void for_each_piece(const RepeatedAverage& avg, const BlockVector& x, F&& f) {
  const auto& runs = avg.runs();
  const auto& blocks = x.blocks();
  if (runs.empty() || blocks.empty()) return;
  auto bit = std::lower_bound(blocks.begin(), blocks.end(), runs.front().lo,
                              [](const Block& b, const Int& v) { return b.hi < v; });
  for (; bit != blocks.end() && bit->lo <= runs.back().hi; ++bit) {
    auto rit = std::lower_bound(runs.begin(), runs.end(), bit->lo,
                                [](const WeightRun& r, const Int& v) { return r.hi < v; });
    for (; rit != runs.end() && rit->lo <= bit->hi; ++rit) {
      Int lo = std::max(bit->lo, rit->lo);
      Int hi = std::min(bit->hi, rit->hi);
      if (lo <= hi) f(lo, hi, rit->weight, *bit);
    }
  }
}

}  // namespace detail

inline WeightedSums weighted_sums(const RepeatedAverage& avg, const BlockVector& x) {
  WeightedSums out;
  detail::for_each_piece(avg, x, [&](const Int& lo, const Int& hi, const Rational& w, const Block&) {
    auto s = x.sums(lo, hi);
    out.sum += w * s.sum;
    out.abs_sum += w * s.abs_sum;
    out.sq_sum += w * s.sq_sum;
  });
  return out;
}

/// Within a piece of fixed weight a constant pattern moves the partial sum
/// monotonically and an alternating one oscillates between two values, so
/// the extremes occur after the first or the last element of a piece.
inline PartialRange partial_range(const RepeatedAverage& avg, const BlockVector& x) {
  PartialRange out;
  Rational running = 0;
  auto see = [&](const Rational& v) {
    if (v < out.min) out.min = v;
    if (v > out.max) out.max = v;
  };
  detail::for_each_piece(avg, x, [&](const Int& lo, const Int& hi, const Rational& w, const Block& b) {
    if (b.pattern == Pattern::Explicit) {
      for (Int i = lo; i <= hi; ++i) {
        running += w * b.at(i);
        see(running);
      }
      return;
    }
    see(running + w * b.at(lo));
    running += w * x.sums(lo, hi).sum;
    see(running);
  });
  out.full = running;
  return out;
}

/// Sums of x against the average on one block A(a,m,k).
struct BlockTerm {
  std::uint64_t k;
  WeightedSums sums;
  PartialRange partial;
};

/// Terms for every block k <= kmax that meets the support of x, in
/// increasing k. Support below the anchor is ignored.
inline std::vector<BlockTerm> block_terms(const Partition& P, const BlockVector& x,
                                          std::uint64_t kmax = UINT64_MAX) {
  std::vector<std::uint64_t> ks;
  for (const auto& b : x.blocks()) {
    if (b.hi < P.anchor()) continue;
    Int lo = std::max(b.lo, P.anchor());
    std::uint64_t k = P.index_of(lo, kmax);
    if (k == 0) break;
    if (!ks.empty() && ks.back() >= k) k = ks.back() + 1;
    for (; k <= kmax && P.start(k - 1) <= b.hi; ++k) {
      ks.push_back(k);
      if (ks.size() > limits().run_cap) throw Error(ErrorKind::BudgetExceeded, "support meets more than run_cap blocks");
    }
  }
  std::vector<BlockTerm> out;
  for (auto k : ks) {
    const auto& avg = P.average(k);
    out.push_back({k, weighted_sums(avg, x), partial_range(avg, x)});
  }
  return out;
}

}  // namespace schreierlab
