#pragma once

#include "schreierlab/numeric.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace schreierlab {

struct Interval {
  Int lo;
  Int hi;  // inclusive
  Int size() const { return hi - lo + 1; }
  bool operator==(const Interval&) const = default;
};

/// Finite set of positive integers, stored as sorted, disjoint,
/// non-adjacent closed intervals so that astronomically large intervals
/// cost O(1). Ranks are 0-based positions in increasing order.
class FiniteSet {
 public:
  FiniteSet() = default;

  FiniteSet(std::initializer_list<long long> elems) {
    std::vector<Int> v;
    for (long long e : elems) v.emplace_back(e);
    *this = from_elements(v);
  }

  static FiniteSet interval(const Int& lo, const Int& hi) {
    FiniteSet s;
    if (lo < 1) throw Error(ErrorKind::InvalidArgument, "sets contain positive integers only");
    if (hi >= lo) s.push_back_interval(lo, hi);
    return s;
  }

  /// Elements must be strictly increasing.
  static FiniteSet from_elements(const std::vector<Int>& elems) {
    FiniteSet s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i > 0 && elems[i] <= elems[i - 1])
        throw Error(ErrorKind::InvalidArgument, "set elements must be strictly increasing");
      s.push_back(elems[i]);
    }
    return s;
  }

  static FiniteSet from_intervals(const std::vector<Interval>& ivs) {
    FiniteSet s;
    for (const auto& iv : ivs) s.push_back_interval(iv.lo, iv.hi);
    return s;
  }

  /// Appends x, which must exceed max().
  void push_back(const Int& x) { push_back_interval(x, x); }

  /// Appends [lo, hi], which must lie strictly right of max().
  void push_back_interval(const Int& lo, const Int& hi) {
    if (hi < lo) return;
    if (lo < 1) throw Error(ErrorKind::InvalidArgument, "sets contain positive integers only");
    if (!ivs_.empty() && lo <= ivs_.back().hi)
      throw Error(ErrorKind::InvalidArgument, "appended interval must lie right of the set");
    if (!ivs_.empty() && lo == ivs_.back().hi + 1) {
      ivs_.back().hi = hi;
      prefix_.back() += hi - lo + 1;
    } else {
      Int before = prefix_.empty() ? Int(0) : prefix_.back();
      ivs_.push_back({lo, hi});
      prefix_.push_back(before + (hi - lo + 1));
    }
  }

  bool empty() const { return ivs_.empty(); }
  Int size() const { return prefix_.empty() ? Int(0) : prefix_.back(); }
  const std::vector<Interval>& intervals() const { return ivs_; }
  bool is_interval() const { return ivs_.size() == 1; }

  const Int& min() const {
    if (empty()) throw Error(ErrorKind::InvalidArgument, "min of empty set");
    return ivs_.front().lo;
  }
  const Int& max() const {
    if (empty()) throw Error(ErrorKind::InvalidArgument, "max of empty set");
    return ivs_.back().hi;
  }

  /// Element of given 0-based rank.
  Int at(const Int& rank) const {
    std::size_t k = interval_of_rank(rank);
    Int before = k == 0 ? Int(0) : prefix_[k - 1];
    return ivs_[k].lo + (rank - before);
  }

  /// Number of elements < x.
  Int rank_of(const Int& x) const {
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), x,
                               [](const Int& v, const Interval& iv) { return v < iv.lo; });
    if (it == ivs_.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - ivs_.begin()) - 1;
    Int before = k == 0 ? Int(0) : prefix_[k - 1];
    if (x > ivs_[k].hi) return prefix_[k];
    return before + (x - ivs_[k].lo);
  }

  bool contains(const Int& x) const {
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), x,
                               [](const Int& v, const Interval& iv) { return v < iv.lo; });
    if (it == ivs_.begin()) return false;
    return x <= std::prev(it)->hi;
  }

  /// Elements with ranks in [first, last).
  FiniteSet slice(const Int& first, const Int& last) const {
    FiniteSet out;
    if (last <= first) return out;
    std::size_t k = interval_of_rank(first);
    Int rank = first;
    while (rank < last && k < ivs_.size()) {
      Int before = k == 0 ? Int(0) : prefix_[k - 1];
      Int lo = ivs_[k].lo + (rank - before);
      Int take = boost::multiprecision::min(prefix_[k], last) - rank;
      out.push_back_interval(lo, lo + take - 1);
      rank += take;
      ++k;
    }
    return out;
  }

  /// Elements in [lo, hi].
  FiniteSet restrict_to(const Int& lo, const Int& hi) const {
    FiniteSet out;
    for (const auto& iv : ivs_) {
      Int a = boost::multiprecision::max(iv.lo, lo);
      Int b = boost::multiprecision::min(iv.hi, hi);
      if (a <= b) out.push_back_interval(a, b);
    }
    return out;
  }

  FiniteSet shifted(const Int& by) const {
    FiniteSet out;
    for (const auto& iv : ivs_) out.push_back_interval(iv.lo + by, iv.hi + by);
    return out;
  }

  /// Explicit element list; refuses sets larger than `cap`.
  std::vector<Int> elements(std::size_t cap = 1u << 20) const {
    if (size() > cap) throw Error(ErrorKind::CapExceeded, "set too large to enumerate");
    std::vector<Int> out;
    for (const auto& iv : ivs_)
      for (Int x = iv.lo; x <= iv.hi; ++x) out.push_back(x);
    return out;
  }

  bool operator==(const FiniteSet& o) const { return ivs_ == o.ivs_; }

  /// Intersection size with [lo, hi].
  Int count_in(const Int& lo, const Int& hi) const {
    if (hi < lo) return 0;
    return rank_of(hi + 1) - rank_of(lo);
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& iv : ivs_) {
      if (!first) out += ",";
      first = false;
      if (iv.lo == iv.hi) out += iv.lo.str();
      else if (iv.hi == iv.lo + 1) out += iv.lo.str() + "," + iv.hi.str();
      else out += "[" + iv.lo.str() + "," + iv.hi.str() + "]";
    }
    return out + "}";
  }

  /// Parses comma lists with optional `[lo,hi]` interval items, e.g.
  /// `2,4,6`, `[2,7]`, `1,[5,9],12`. Braces are optional.
  static FiniteSet parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '{' && ch != '}') s += ch;
    FiniteSet out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (s[pos] == '[') {
        auto close = s.find(']', pos);
        if (close == std::string::npos) throw Error(ErrorKind::Parse, "unclosed interval in '" + s + "'");
        auto inner = s.substr(pos + 1, close - pos - 1);
        auto comma = inner.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Parse, "interval needs lo,hi in '" + s + "'");
        Int lo = parse_int(inner.substr(0, comma));
        Int hi = parse_int(inner.substr(comma + 1));
        if (hi < lo) throw Error(ErrorKind::Parse, "empty interval in '" + s + "'");
        if (!out.empty() && lo <= out.max()) throw Error(ErrorKind::Parse, "set items must increase");
        out.push_back_interval(lo, hi);
        pos = close + 1;
      } else {
        auto comma = s.find(',', pos);
        auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Int v = parse_int(item);
        if (!out.empty() && v <= out.max()) throw Error(ErrorKind::Parse, "set items must increase");
        out.push_back(v);
        pos = comma == std::string::npos ? s.size() : comma;
      }
      if (pos < s.size()) {
        if (s[pos] != ',') throw Error(ErrorKind::Parse, "expected ',' in '" + s + "'");
        ++pos;
      }
    }
    return out;
  }

 private:
  std::size_t interval_of_rank(const Int& rank) const {
    if (rank < 0 || rank >= size()) throw Error(ErrorKind::InvalidArgument, "rank out of range");
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), rank);
    return static_cast<std::size_t>(it - prefix_.begin());
  }

  std::vector<Interval> ivs_;
  std::vector<Int> prefix_;  // prefix_[k] = number of elements in ivs_[0..k]
};

}  // namespace schreierlab
