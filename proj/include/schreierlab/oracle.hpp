#pragma once

// Definition-literal membership, independent of the library's algorithms;
// used as an oracle by tests and by the verify suites.

#include "schreierlab/ordinal.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace schreierlab::oracle {

using schreierlab::Ordinal;

// All members of S_a inside [1, universe], as bitmasks (bit i-1 <-> i),
// built straight from the recursive definition: successor sets are unions
// of at most min E consecutive S_b pieces (every split is tried); limit
// sets may use any m <= min E.
class SchreierFamilies {
 public:
  explicit SchreierFamilies(unsigned universe) : n_(universe) {}

  const std::vector<bool>& family(const Ordinal& a) {
    auto key = a.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<bool> fam(std::size_t{1} << n_, false);
    fam[0] = true;
    if (a.is_zero()) {
      for (unsigned i = 0; i < n_; ++i) fam[std::size_t{1} << i] = true;
    } else {
      auto c = schreierlab::classify(a);
      if (c.kind == schreierlab::OrdinalKind::Successor) {
        const auto& sub = family(*c.pred);
        std::vector<bool> copy = sub;
        for (std::uint32_t mask = 1; mask < (1u << n_); ++mask) fam[mask] = successor_member(mask, copy);
      } else {
        for (std::uint32_t mask = 1; mask < (1u << n_); ++mask) {
          unsigned mn = min_elem(mask);
          for (unsigned m = 1; m <= mn && !fam[mask]; ++m) {
            const auto& f = family(schreierlab::lambda_approx(a, m).successor());
            fam[mask] = f[mask];
          }
        }
      }
    }
    return cache_.emplace(key, std::move(fam)).first->second;
  }

  bool contains(const Ordinal& a, std::uint32_t mask) { return family(a)[mask]; }

  static unsigned min_elem(std::uint32_t mask) { return static_cast<unsigned>(__builtin_ctz(mask)) + 1; }

 private:
  bool successor_member(std::uint32_t mask, const std::vector<bool>& sub) const {
    std::vector<unsigned> bits;
    for (unsigned i = 0; i < n_; ++i)
      if (mask & (1u << i)) bits.push_back(i);
    unsigned cap = bits.front() + 1;
    std::size_t k = bits.size();
    // every split of the ordered elements into contiguous pieces
    for (std::uint32_t cuts = 0; cuts < (1u << (k - 1)); ++cuts) {
      unsigned pieces = 1 + static_cast<unsigned>(__builtin_popcount(cuts));
      if (pieces > cap) continue;
      bool ok = true;
      std::uint32_t piece = 0;
      for (std::size_t i = 0; i < k && ok; ++i) {
        piece |= 1u << bits[i];
        bool cut_after = i + 1 == k || (cuts & (1u << i));
        if (cut_after) {
          ok = sub[piece];
          piece = 0;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  unsigned n_;
  std::map<std::string, std::vector<bool>> cache_;
};

}  // namespace schreierlab::oracle
