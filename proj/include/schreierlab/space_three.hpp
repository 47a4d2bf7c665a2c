#pragma once

#include "schreierlab/config_search.hpp"
#include "schreierlab/gauge.hpp"
#include "schreierlab/norm_result.hpp"
#include "schreierlab/partition.hpp"

namespace schreierlab {

struct SearchCaps {
  std::size_t support = 12;  // exact search for order >= 1: support size
  std::uint64_t index = 64;  // ... and largest support index
  std::size_t dense = 256;   // explicit evaluation for order 0
};

/// The space normed by the maximum of four seminorms built on a gauge
/// profile: a Schreier-configuration sup (1), block averages along the
/// partitions anchored at the second sequence (2), and square-function and
/// partial-sum seminorms along the partitions anchored at the first (3, 4).
class ThreeSpace {
 public:
  explicit ThreeSpace(std::shared_ptr<const GaugeProfile> gauge, SearchCaps caps = {})
      : gauge_(std::move(gauge)), caps_(caps) {
    const Ordinal& a = gauge_->alpha();
    for (const auto& m : gauge_->m_seq()) first_.push_back(std::make_shared<Partition>(a, m));
    for (const auto& n : gauge_->n_seq()) second_.push_back(std::make_shared<Partition>(a.successor(), n));
  }

  const Ordinal& alpha() const { return gauge_->alpha(); }
  const GaugeProfile& gauge() const { return *gauge_; }
  const SearchCaps& caps() const { return caps_; }

  NormValue seminorm1(const BlockVector& x) const {
    if (x.is_zero()) return NormValue::exact(Real(0), "1");
    if (alpha().is_zero()) return first_order_zero(x);
    return first_general(x);
  }

  NormValue seminorm2(const BlockVector& x) const {
    Real best = 0;
    for (std::size_t i = 0; i < second_.size(); ++i) {
      const auto& P = *second_[i];
      auto kmax = detail::to_index(gauge_->n_seq()[i], "n");
      Real total = 0;
      for (const auto& t : block_terms(P, x, kmax)) total += gauge_->phi(P.start(t.k - 1)) * to_real(t.sums.abs_sum);
      best = std::max(best, total);
    }
    return NormValue::exact(best, "2");
  }

  NormValue seminorm3(const BlockVector& x) const {
    Real best = 0;
    for (std::size_t i = 0; i < first_.size(); ++i) {
      auto kmax = detail::to_index(gauge_->m_seq()[i], "m");
      Real total = 0;
      for (const auto& t : block_terms(*first_[i], x, kmax))
        total += (gauge_->psi(Int(t.k)) - gauge_->psi(Int(t.k - 1))) * to_real(t.sums.sq_sum);
      best = std::max(best, Real(sqrt(total)));
    }
    return NormValue::exact(best, "3");
  }

  /// The cut i0 falls inside one block J: every earlier block contributes
  /// its full sum and J contributes an extreme of its own partial sums.
  NormValue seminorm4(const BlockVector& x) const {
    Real best = 0;
    for (std::size_t i = 0; i < first_.size(); ++i) {
      auto kmax = detail::to_index(gauge_->m_seq()[i], "m");
      Real before = 0;
      for (const auto& t : block_terms(*first_[i], x, kmax)) {
        Real c = gauge_->phi(Int(t.k)) - gauge_->phi(Int(t.k - 1));
        for (const auto& p : {t.partial.min, t.partial.max}) best = std::max(best, Real(abs(before + c * to_real(p))));
        before += c * to_real(t.partial.full);
      }
    }
    return NormValue::exact(best, "4");
  }

  NormValue seminorm(int i, const BlockVector& x) const {
    switch (i) {
      case 1: return seminorm1(x);
      case 2: return seminorm2(x);
      case 3: return seminorm3(x);
      case 4: return seminorm4(x);
    }
    throw Error(ErrorKind::InvalidArgument, "seminorm index must be 1..4");
  }

  NormValue norm(const BlockVector& x) const {
    return max_of({seminorm1(x), seminorm2(x), seminorm3(x), seminorm4(x)});
  }

  /// 1 on [n, s_(a+2,n)(1) - 1].
  BlockVector democracy_witness(const Int& n) const {
    return BlockVector::indicator(FiniteSet::interval(n, s_index(alpha().successor().successor(), n, 1) - 1));
  }

  /// Value 1/phi(k) on A(a,m,k) for k = 1..m, alternating in sign with the
  /// index when requested; the values are rounded to rationals.
  BlockVector uncond_witness(const Int& m, bool alternating) const {
    Partition P(alpha(), m);
    BlockVector x;
    for (std::uint64_t k = 1; k <= detail::to_index(m, "m"); ++k) {
      Rational v = to_rational(1 / gauge_->phi(Int(k)));
      x.append({P.start(k - 1), P.start(k) - 1, alternating ? Pattern::Alternating : Pattern::Constant, v, {}});
    }
    return x;
  }

 private:
  // phi(n)/n times the largest sum of at most n values |x_i| with i >= n.
  // For constant modulus this peaks at the largest n with at least n support
  // points in [n, oo).
  NormValue first_order_zero(const BlockVector& x) const {
    auto support = x.support();
    Rational top = x.max_abs();
    bool flat = std::all_of(x.blocks().begin(), x.blocks().end(), [&](const Block& b) {
      return b.pattern != Pattern::Explicit ? abs(b.value) == top
                                            : std::all_of(b.values.begin(), b.values.end(),
                                                          [&](const Rational& v) { return abs(v) == top; });
    });
    if (flat) {
      Int lo = 1, hi = support.max();
      while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (support.count_in(mid, support.max()) >= mid) lo = mid; else hi = mid - 1;
      }
      return NormValue::exact(gauge_->phi(lo) * to_real(top), "1");
    }
    if (x.support_size() <= caps_.dense) {
      auto entries = x.entries(caps_.dense);
      const std::size_t K = entries.size();
      std::vector<Int> cands;
      for (std::size_t n = 1; n <= K; ++n) cands.emplace_back(n);
      for (const auto& [i, v] : entries) cands.push_back(i + 1);
      Real best = 0;
      for (const auto& n : cands) {
        std::vector<Rational> tail;
        for (const auto& [i, v] : entries)
          if (i >= n) tail.push_back(abs(v));
        std::size_t take = n < Int(tail.size()) ? static_cast<std::size_t>(n) : tail.size();
        std::partial_sort(tail.begin(), tail.begin() + take, tail.end(), std::greater<>());
        Rational sum = 0;
        for (std::size_t t = 0; t < take; ++t) sum += tail[t];
        best = std::max(best, Real(gauge_->phi(n) / to_real(n) * to_real(sum)));
      }
      return NormValue::exact(best, "1");
    }
    return bracket_first(x, to_real(top));
  }

  NormValue first_general(const BlockVector& x) const {
    Real top = to_real(x.max_abs());
    if (x.support_size() <= caps_.support && x.support().max() <= caps_.index) {
      std::vector<std::uint64_t> y;
      std::vector<Rational> v;
      for (const auto& [i, val] : x.entries(caps_.support)) {
        y.push_back(static_cast<std::uint64_t>(i));
        v.push_back(abs(val));
      }
      try {
        auto r = search_first_seminorm(alpha(), y, v, [&](std::uint64_t s) { return gauge_->phi(Int(s)); });
        return NormValue::exact(std::max(r.value, top), "1");
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
      }
    }
    return bracket_first(x, top);
  }

  // Lower bound from the single-point configuration; upper bound from
  // |x| <= max|x| 1_supp and the estimates phi(|supp|) and 6 phi(m+1),
  // m = m_star(|supp|, a+1).
  NormValue bracket_first(const BlockVector& x, const Real& top) const {
    Int K = x.support_size();
    std::optional<Real> upper;
    auto consider = [&](const Int& arg, const Real& factor) {
      try {
        Real u = factor * gauge_->phi(arg) * top;
        if (!upper || u < *upper) upper = u;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OutOfWindow && e.kind() != ErrorKind::BudgetExceeded) throw;
      }
    };
    consider(K, Real(1));
    try {
      consider(m_star(K, alpha().successor()) + 1, Real(6));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
    if (!upper) throw Error(ErrorKind::OutOfWindow, "no upper bound for the first seminorm inside the gauge window");
    return NormValue::bracket(top, *upper, "1");
  }

  std::shared_ptr<const GaugeProfile> gauge_;
  SearchCaps caps_;
  std::vector<std::shared_ptr<Partition>> first_, second_;
};

/// 1 on the leftmost interval of the given size that lies in S_a.
inline BlockVector schreier_indicator(const Ordinal& a, const Int& size) {
  Int lo = m_star(size, a);
  return BlockVector::indicator(FiniteSet::interval(lo, lo + size - 1));
}

}  // namespace schreierlab
