#pragma once

// Schreier families S_a for a < w^w under the fixed approximating sequence
// of lambda_approx. Membership is decided by greedy chunking: for a = b+1 a
// set belongs to S_a iff its greedy split into longest S_b prefixes has at
// most min E chunks; for limit a the test is delegated to
// S_{lambda(a, min E) + 1}.

#include "schreierlab/finite_set.hpp"
#include "schreierlab/ordinal.hpp"

#include <limits>
#include <vector>

namespace schreierlab {

namespace detail {

inline std::uint64_t to_index(const Int& v, const char* what) {
  if (v > std::numeric_limits<std::uint64_t>::max() / 2)
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " is too large to index an approximating sequence");
  return v.convert_to<std::uint64_t>();
}

inline void enter(std::size_t depth) {
  if (depth > limits().depth_cap)
    throw Error(ErrorKind::BudgetExceeded, "membership recursion exceeds depth cap");
}

// Longest prefix (as an element count) of E[p..] that lies in S_a.
inline Int reach(const FiniteSet& E, const Int& p, const Ordinal& a, std::size_t depth = 0) {
  enter(depth);
  Int remaining = E.size() - p;
  if (remaining <= 0) return 0;
  if (a.is_zero()) return 1;
  Int first = E.at(p);
  // Every set in S_1 lies in S_a for a >= 1.
  if (remaining <= first) return remaining;
  if (a == Ordinal::finite(1)) return first;

  auto c = classify(a);
  if (c.kind == OrdinalKind::Limit)
    return reach(E, p, lambda_approx(a, to_index(first, "set element")).successor(), depth + 1);

  // Finite levels grow like towers, so a large finite order saturates at a
  // low level; climb before descending through every intermediate level.
  constexpr std::uint64_t kClimb = 5;
  if (a.is_finite() && a.finite_value() > kClimb) {
    if (reach(E, p, Ordinal::finite(kClimb), depth + 1) == remaining) return remaining;
  }

  const Ordinal& pred = *c.pred;
  Int count = 0;
  Int chunks = 0;
  while (chunks < first && count < remaining) {
    Int step = reach(E, p + count, pred, depth + 1);
    count += step;
    ++chunks;
  }
  return count;
}

inline Int gamma(const Ordinal& a, const Int& v, std::size_t depth) {
  enter(depth);
  if (a.is_zero()) return v + 1;
  if (a == Ordinal::finite(1)) {
    Int r = 2 * v;
    check_budget(r, "s-index");
    return r;
  }
  auto c = classify(a);
  if (c.kind == OrdinalKind::Limit)
    return gamma(lambda_approx(a, to_index(v, "s-index anchor")).successor(), v, depth + 1);
  const Ordinal& pred = *c.pred;
  // pred >= 1 here, so v iterations at least double v each time.
  if (bit_length(v) + v > digit_cap_bits() + 1)
    throw Error(ErrorKind::BudgetExceeded, "s-index exceeds the digit cap of " + std::to_string(limits().digit_cap));
  Int u = v;
  for (Int i = 0; i < v; ++i) {
    u = gamma(pred, u, depth + 1);
    check_budget(u, "s-index");
  }
  return u;
}

}  // namespace detail

inline bool is_member(const FiniteSet& E, const Ordinal& a) {
  if (E.empty()) return true;
  return detail::reach(E, 0, a) == E.size();
}

inline bool is_maximal(const FiniteSet& A, const Ordinal& a) {
  if (A.empty() || !is_member(A, a)) return false;
  FiniteSet ext = A;
  ext.push_back(A.max() + 1);
  return !is_member(ext, a);
}

/// s_{(a,v)}(1): one past the maximal S_a interval starting at v. Order 0
/// gives singleton blocks.
inline Int gamma(const Ordinal& a, const Int& v) {
  if (v < 1) throw Error(ErrorKind::InvalidArgument, "s-index anchor must be positive");
  return detail::gamma(a, v, 0);
}

/// s_{(a,m)}(i): [s(i-1), s(i)-1] are the consecutive maximal S_a
/// intervals partitioning [m, oo).
inline Int s_index(const Ordinal& a, const Int& m, std::uint64_t i) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "s-index anchor must be positive");
  if (a.is_zero()) return m + i;
  Int s = m;
  for (std::uint64_t k = 0; k < i; ++k) s = detail::gamma(a, s, 0);
  return s;
}

/// The interval A(a, m, i) = [s(i-1), s(i) - 1], i >= 1.
inline FiniteSet partition_block(const Ordinal& a, const Int& m, std::uint64_t i) {
  if (i == 0) throw Error(ErrorKind::InvalidArgument, "partition blocks are 1-based");
  Int lo = s_index(a, m, i - 1);
  return FiniteSet::interval(lo, gamma(a, lo) - 1);
}

/// Splits a set into greedy longest S_b chunks.
inline std::vector<FiniteSet> greedy_chunks(const FiniteSet& E, const Ordinal& b) {
  std::vector<FiniteSet> out;
  Int p = 0;
  while (p < E.size()) {
    Int step = detail::reach(E, p, b);
    if (out.size() >= limits().run_cap)
      throw Error(ErrorKind::CapExceeded, "too many chunks to materialise");
    out.push_back(E.slice(p, p + step));
    p += step;
  }
  return out;
}

/// Recursive representation A = A_1 u ... u A_{min A} with each A_i in
/// MAX(S_{lambda(a, min A)}).
inline std::vector<FiniteSet> decompose_max(const FiniteSet& A, const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "decomposition needs order >= 1");
  if (!is_maximal(A, a)) throw Error(ErrorKind::NotMaximal, A.str() + " is not maximal in S_" + a.str());
  Ordinal b = lambda_approx(a, detail::to_index(A.min(), "min A"));
  if (A.min() > limits().run_cap)
    throw Error(ErrorKind::CapExceeded, "decomposition has too many parts to materialise");
  auto parts = greedy_chunks(A, b);
  if (Int(parts.size()) != A.min())
    throw Error(ErrorKind::NotMaximal, "recursive representation has the wrong number of parts");
  return parts;
}

/// Largest t with A_1 < ... < A_t in MAX(S_a) inside E (exact search).
inline std::size_t t_alpha(const FiniteSet& E, const Ordinal& a) {
  if (E.size() > limits().tpack_cap)
    throw Error(ErrorKind::CapExceeded, "t_alpha exact search is capped at |E| <= " + std::to_string(limits().tpack_cap));
  auto elems = E.elements();
  std::size_t n = elems.size();
  if (n == 0) return 0;
  // maximal subsets grouped by the index of their minimum
  std::vector<std::vector<std::size_t>> ends_by_start(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Int> sub;
    std::size_t lo = n, hi = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sub.push_back(elems[i]);
        lo = std::min(lo, i);
        hi = i;
      }
    if (is_maximal(FiniteSet::from_elements(sub), a)) ends_by_start[lo].push_back(hi);
  }
  std::vector<std::size_t> best(n + 1, 0);
  for (std::size_t pos = n; pos-- > 0;) {
    best[pos] = best[pos + 1];
    for (std::size_t hi : ends_by_start[pos]) best[pos] = std::max(best[pos], 1 + best[hi + 1]);
  }
  return best[0];
}

/// Least m with [m, m+n-1] in S_a. Membership of the shifted interval is
/// monotone in m (spreading) and m = n always works (S_1 inside S_a).
inline Int m_star(const Int& n, const Ordinal& a) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "m_star needs n >= 1");
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "m_star needs order >= 1");
  auto ok = [&](const Int& m) { return is_member(FiniteSet::interval(m, m + n - 1), a); };
  if (ok(1)) return 1;
  Int lo = 1;  // fails
  Int hi = 2;
  while (hi < n && !ok(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi > n) hi = n;
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace schreierlab
