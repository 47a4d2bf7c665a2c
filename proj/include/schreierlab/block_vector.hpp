#pragma once

// Finitely supported vectors in run-length form. A block covers [lo, hi]
// with a constant value, an alternating value v * (-1)^i, or explicit
// per-index values. Huge supports cost O(#blocks).

#include "schreierlab/finite_set.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace schreierlab {

enum class Pattern { Constant, Alternating, Explicit };

struct Block {
  Int lo;
  Int hi;
  Pattern pattern = Pattern::Constant;
  Rational value;                // Constant / Alternating
  std::vector<Rational> values;  // Explicit, values[i - lo]

  Int length() const { return hi - lo + 1; }

  Rational at(const Int& i) const {
    switch (pattern) {
      case Pattern::Constant: return value;
      case Pattern::Alternating: return boost::multiprecision::bit_test(i, 0) ? Rational(-value) : value;
      case Pattern::Explicit: return values[static_cast<std::size_t>(Int(i - lo))];
    }
    return 0;
  }

  bool operator==(const Block&) const = default;
};

/// Sums over an index range: sum x_i, sum |x_i|, sum x_i^2, count.
struct RangeSums {
  Rational sum;
  Rational abs_sum;
  Rational sq_sum;
  Int count;
};

inline int parity_sign(const Int& i) { return boost::multiprecision::bit_test(i, 0) ? -1 : 1; }

/// Sum of (-1)^i over [a, b].
inline int alternating_count(const Int& a, const Int& b) {
  if (b < a) return 0;
  if (bit_test(Int(b - a), 0)) return 0;  // even number of terms
  return parity_sign(a);
}

class BlockVector {
 public:
  BlockVector() = default;

  static BlockVector constant(const FiniteSet& support, const Rational& v) {
    BlockVector x;
    for (const auto& iv : support.intervals()) x.append({iv.lo, iv.hi, Pattern::Constant, v, {}});
    return x;
  }

  static BlockVector indicator(const FiniteSet& support) { return constant(support, Rational(1)); }

  static BlockVector unit(const Int& i) { return constant(FiniteSet::interval(i, i), Rational(1)); }

  /// From (index, value) pairs in any order; zeros are dropped.
  static BlockVector from_entries(std::vector<std::pair<Int, Rational>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    BlockVector x;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k > 0 && entries[k].first == entries[k - 1].first)
        throw Error(ErrorKind::InvalidArgument, "duplicate index " + entries[k].first.str());
      if (entries[k].first < 1) throw Error(ErrorKind::InvalidArgument, "indices start at 1");
      if (entries[k].second != 0)
        x.append({entries[k].first, entries[k].first, Pattern::Constant, entries[k].second, {}});
    }
    return x;
  }

  /// Appends a block to the right of every existing block.
  void append(Block b) {
    if (b.hi < b.lo) throw Error(ErrorKind::InvalidArgument, "empty block");
    if (b.lo < 1) throw Error(ErrorKind::InvalidArgument, "indices start at 1");
    if (!blocks_.empty() && !(blocks_.back().hi < b.lo))
      throw Error(ErrorKind::InvalidArgument, "blocks must be disjoint and sorted");
    if (b.pattern == Pattern::Explicit) {
      if (Int(b.values.size()) != b.length()) throw Error(ErrorKind::InvalidArgument, "explicit block size mismatch");
      for (const auto& v : b.values)
        if (v == 0) throw Error(ErrorKind::InvalidArgument, "explicit blocks store no zeros");
      b.value = 0;
    } else if (b.value == 0) {
      return;
    }
    if (!blocks_.empty()) {
      auto& last = blocks_.back();
      if (last.hi + 1 == b.lo && last.pattern == b.pattern && b.pattern != Pattern::Explicit && last.value == b.value) {
        last.hi = b.hi;
        return;
      }
    }
    blocks_.push_back(std::move(b));
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  bool is_zero() const { return blocks_.empty(); }

  FiniteSet support() const {
    FiniteSet s;
    for (const auto& b : blocks_) s.push_back_interval(b.lo, b.hi);
    return s;
  }

  Int support_size() const {
    Int n = 0;
    for (const auto& b : blocks_) n += b.length();
    return n;
  }

  Rational at(const Int& i) const {
    const Block* b = find(i);
    return b ? b->at(i) : Rational(0);
  }

  Rational max_abs() const {
    Rational m = 0;
    for (const auto& b : blocks_) {
      if (b.pattern == Pattern::Explicit) {
        for (const auto& v : b.values) m = std::max(m, Rational(abs(v)));
      } else {
        m = std::max(m, Rational(abs(b.value)));
      }
    }
    return m;
  }

  /// Sums over [a, b] intersected with the support.
  RangeSums sums(const Int& a, const Int& b) const {
    RangeSums r{0, 0, 0, 0};
    if (b < a) return r;
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), a, [](const Block& blk, const Int& v) { return blk.hi < v; });
    for (; it != blocks_.end() && it->lo <= b; ++it) {
      Int lo = std::max(it->lo, a);
      Int hi = std::min(it->hi, b);
      Int len = hi - lo + 1;
      switch (it->pattern) {
        case Pattern::Constant:
          r.sum += it->value * Rational(len);
          r.abs_sum += abs(it->value) * Rational(len);
          r.sq_sum += it->value * it->value * Rational(len);
          break;
        case Pattern::Alternating:
          r.sum += it->value * alternating_count(lo, hi);
          r.abs_sum += abs(it->value) * Rational(len);
          r.sq_sum += it->value * it->value * Rational(len);
          break;
        case Pattern::Explicit:
          for (Int i = lo; i <= hi; ++i) {
            const Rational& v = it->values[static_cast<std::size_t>(Int(i - it->lo))];
            r.sum += v;
            r.abs_sum += abs(v);
            r.sq_sum += v * v;
          }
          break;
      }
      r.count += len;
    }
    return r;
  }

  /// Coordinates as (index, value), refusing supports above `cap`.
  std::vector<std::pair<Int, Rational>> entries(std::size_t cap) const {
    if (support_size() > cap)
      throw Error(ErrorKind::CapExceeded, "support of " + support_size().str() + " entries exceeds " + std::to_string(cap));
    std::vector<std::pair<Int, Rational>> out;
    for (const auto& b : blocks_)
      for (Int i = b.lo; i <= b.hi; ++i) out.emplace_back(i, b.at(i));
    return out;
  }

  /// P_A x.
  BlockVector restrict_to(const FiniteSet& A) const {
    BlockVector out;
    const auto& ivs = A.intervals();
    std::size_t j = 0;
    for (const auto& b : blocks_) {
      while (j < ivs.size() && ivs[j].hi < b.lo) ++j;
      for (std::size_t k = j; k < ivs.size() && ivs[k].lo <= b.hi; ++k) {
        Int lo = std::max(b.lo, ivs[k].lo);
        Int hi = std::min(b.hi, ivs[k].hi);
        if (hi < lo) continue;
        out.append(slice(b, lo, hi));
      }
    }
    return out;
  }

  /// Coordinates with |x_i| above (strict) or at least (non-strict) t.
  BlockVector threshold(const Rational& t, bool strict) const {
    BlockVector out;
    for (const auto& b : blocks_) {
      if (b.pattern != Pattern::Explicit) {
        Rational m = abs(b.value);
        if (strict ? m > t : m >= t) out.append(b);
        continue;
      }
      for (Int i = b.lo; i <= b.hi; ++i) {
        Rational v = b.at(i);
        Rational m = abs(v);
        if (strict ? m > t : m >= t) out.append({i, i, Pattern::Constant, v, {}});
      }
    }
    return out;
  }

  BlockVector scaled(const Rational& c) const {
    BlockVector out;
    if (c == 0) return out;
    for (auto b : blocks_) {
      b.value *= c;
      for (auto& v : b.values) v *= c;
      out.blocks_.push_back(std::move(b));
    }
    return out;
  }

  /// Coordinatewise sum. Mixed patterns on overlapping ranges are
  /// materialised, refusing more than `cap` explicit entries.
  BlockVector plus(const BlockVector& y, std::size_t cap = 1u << 16) const {
    std::vector<Int> cuts;
    for (const auto* v : {this, &y})
      for (const auto& b : v->blocks_) {
        cuts.push_back(b.lo);
        cuts.push_back(b.hi + 1);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    BlockVector out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Int lo = cuts[k], hi = cuts[k + 1] - 1;
      const Block* a = find(lo);
      const Block* b = y.find(lo);
      if (!a && !b) continue;
      if (!a || !b) {
        out.append(slice(a ? *a : *b, lo, hi));
        continue;
      }
      if (a->pattern == b->pattern && a->pattern != Pattern::Explicit) {
        out.append({lo, hi, a->pattern, a->value + b->value, {}});
        continue;
      }
      if (hi - lo + 1 > cap) throw Error(ErrorKind::CapExceeded, "sum of mixed patterns is too long to materialise");
      for (Int i = lo; i <= hi; ++i) {
        Rational v = a->at(i) + b->at(i);
        if (v != 0) out.append({i, i, Pattern::Constant, v, {}});
      }
    }
    return out;
  }

  bool operator==(const BlockVector&) const = default;

  nlohmann::json block_json(const Block& b) const {
    nlohmann::json j = {{"lo", b.lo.str()}, {"hi", b.hi.str()}};
    switch (b.pattern) {
      case Pattern::Constant: j["pattern"] = "const"; j["value"] = to_string(b.value); break;
      case Pattern::Alternating: j["pattern"] = "alt"; j["value"] = to_string(b.value); break;
      case Pattern::Explicit: {
        j["pattern"] = "explicit";
        auto vals = nlohmann::json::array();
        for (const auto& v : b.values) vals.push_back(to_string(v));
        j["values"] = vals;
        break;
      }
    }
    return j;
  }

  /// JSON lines, one block per line.
  void write_jsonl(std::ostream& os) const {
    for (const auto& b : blocks_) os << block_json(b).dump() << "\n";
  }

  static BlockVector read_jsonl(std::istream& is) {
    std::vector<Block> blocks;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, "vector line " + std::to_string(lineno) + ": " + e.what());
      }
      auto field = [&](const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_string())
          throw Error(ErrorKind::Parse, "vector line " + std::to_string(lineno) + ": missing string field '" + key + "'");
        return j[key].get<std::string>();
      };
      Block b;
      b.lo = parse_int(field("lo"));
      b.hi = parse_int(field("hi"));
      std::string pattern = j.value("pattern", std::string("const"));
      if (pattern == "const" || pattern == "alt") {
        b.pattern = pattern == "const" ? Pattern::Constant : Pattern::Alternating;
        b.value = parse_rational(field("value"));
      } else if (pattern == "explicit") {
        b.pattern = Pattern::Explicit;
        if (!j.contains("values") || !j["values"].is_array())
          throw Error(ErrorKind::Parse, "vector line " + std::to_string(lineno) + ": explicit block needs 'values'");
        for (const auto& v : j["values"]) b.values.push_back(parse_rational(v.get<std::string>()));
      } else {
        throw Error(ErrorKind::Parse, "vector line " + std::to_string(lineno) + ": unknown pattern '" + pattern + "'");
      }
      blocks.push_back(std::move(b));
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.lo < b.lo; });
    BlockVector x;
    for (auto& b : blocks) x.append(std::move(b));
    return x;
  }

  std::string str() const {
    std::string out;
    for (const auto& b : blocks_) out += block_json(b).dump() + "\n";
    return out;
  }

 private:
  const Block* find(const Int& i) const {
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), i, [](const Block& blk, const Int& v) { return blk.hi < v; });
    if (it == blocks_.end() || it->lo > i) return nullptr;
    return &*it;
  }

  static Block slice(const Block& b, const Int& lo, const Int& hi) {
    Block out{lo, hi, b.pattern, b.value, {}};
    if (b.pattern == Pattern::Explicit)
      out.values.assign(b.values.begin() + static_cast<std::ptrdiff_t>(Int(lo - b.lo)),
                        b.values.begin() + static_cast<std::ptrdiff_t>(Int(hi - b.lo + 1)));
    return out;
  }

  std::vector<Block> blocks_;
};

}  // namespace schreierlab
