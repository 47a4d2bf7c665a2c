#pragma once

#include "schreierlab/averages.hpp"

#include <functional>
#include <map>

namespace schreierlab {

/// Weight sequence of a maximal S_a set, in increasing index order, placed
/// as far left as its structure allows.
struct WeightProfile {
  std::vector<Rational> weights;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

/// Enumerates, up to a total size budget, every weight sequence that a
/// chain A_1 < ... < A_s of maximal S_a sets can carry. Positions only
/// matter through the next minimum, so among chains with equal weights the
/// one ending leftmost dominates.
class ProfileEnumerator {
 public:
  explicit ProfileEnumerator(std::size_t state_cap = 1u << 18) : state_cap_(state_cap) {}

  /// Maximal S_a sets with min exactly c and at most `budget` elements.
  const std::vector<WeightProfile>& exact_min(const Ordinal& a, std::uint64_t c, std::size_t budget) {
    auto key = std::make_tuple(a.str(), c, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<WeightProfile> out;
    if (a.is_zero()) {
      if (budget >= 1) out.push_back({{Rational(1)}, c, c});
    } else if (c <= budget) {
      Ordinal b = lambda_approx(a, c);
      States states;
      for (const auto& p : exact_min(b, c, budget)) keep(states, p.weights, p.max);
      for (std::uint64_t part = 1; part < c; ++part) states = extend(states, b, budget);
      Rational scale(1, c);
      for (const auto& [w, mx] : states) {
        WeightProfile p{w, c, mx};
        for (auto& v : p.weights) v *= scale;
        out.push_back(std::move(p));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  /// Weight sequences of A_1 < ... < A_s in MAX(S_a) with s <= min A_1 and
  /// total size at most `budget`.
  std::vector<std::vector<Rational>> chains(const Ordinal& a, std::uint64_t s, std::size_t budget) {
    States states;
    std::uint64_t hi = a.is_zero() ? s : budget;
    for (std::uint64_t c = s; c <= hi; ++c)
      for (const auto& p : exact_min(a, c, budget)) keep(states, p.weights, p.max);
    for (std::uint64_t j = 1; j < s; ++j) states = extend(states, a, budget);
    std::vector<std::vector<Rational>> out;
    for (auto& [w, mx] : states) out.push_back(w);
    return out;
  }

 private:
  using States = std::map<std::vector<Rational>, std::uint64_t>;

  void keep(States& states, const std::vector<Rational>& w, std::uint64_t mx) {
    auto [it, inserted] = states.emplace(w, mx);
    if (!inserted && mx < it->second) it->second = mx;
    if (states.size() > state_cap_) throw Error(ErrorKind::CapExceeded, "configuration search exceeds its state cap");
  }

  // Appends one more maximal S_b set after each state.
  States extend(const States& states, const Ordinal& b, std::size_t budget) {
    States next;
    for (const auto& [w, mx] : states) {
      std::size_t room = budget - w.size();
      std::uint64_t lo = mx + 1;
      std::uint64_t hi = b.is_zero() ? lo : room;
      for (std::uint64_t c = lo; c <= hi; ++c)
        for (const auto& p : exact_min(b, c, room)) {
          auto joined = w;
          joined.insert(joined.end(), p.weights.begin(), p.weights.end());
          keep(next, joined, p.max);
        }
    }
    return next;
  }

  std::size_t state_cap_;
  std::map<std::tuple<std::string, std::uint64_t, std::size_t>, std::vector<WeightProfile>> memo_;
};

namespace detail {

// Best order-preserving placement of weights w onto support values v at
// positions y: match (k, r) sends weight r to index y_k. A chain of matches
// needs room for the unmatched weights in between, and the image must start
// at or after |w| so that it lies in S_1.
template <class T>
T best_matching(const std::vector<T>& w, const std::vector<T>& v, const std::vector<std::uint64_t>& y) {
  const std::size_t n = w.size(), K = v.size();
  std::vector<std::vector<T>> f(K, std::vector<T>(n, T(0)));
  std::vector<std::vector<bool>> ok(K, std::vector<bool>(n, false));
  T best = 0;
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t r = 0; r < n; ++r) {
      bool reachable = y[k] >= n + r;  // y_k - r >= n with 0-based r
      T acc = 0;
      for (std::size_t k2 = 0; k2 < k; ++k2)
        for (std::size_t r2 = 0; r2 < r; ++r2)
          if (ok[k2][r2] && r - r2 <= y[k] - y[k2] && (!reachable || f[k2][r2] > acc)) {
            acc = f[k2][r2];
            reachable = true;
          }
      if (!reachable) continue;
      ok[k][r] = true;
      f[k][r] = acc + w[r] * v[k];
      if (f[k][r] > best) best = f[k][r];
    }
  return best;
}

}  // namespace detail

struct SearchResult {
  Real value = 0;
  std::uint64_t s = 0;
  std::vector<Rational> weights;
  std::size_t configurations = 0;
};

/// sup over s <= A_1 < ... < A_s in MAX(S_a) and increasing pi with image
/// in S_1 of phi(s)/s sum w_r |x_pi(r)|, for a vector given by its support
/// positions and absolute values. Exact: candidates are screened in double
/// precision and everything within 1e-9 of the best is re-solved exactly.
inline SearchResult search_first_seminorm(const Ordinal& a, const std::vector<std::uint64_t>& y,
                                          const std::vector<Rational>& v,
                                          const std::function<Real(std::uint64_t)>& phi,
                                          std::size_t state_cap = 1u << 18) {
  SearchResult out;
  if (y.empty()) return out;
  const std::size_t budget = y.back();
  std::vector<double> vd;
  for (const auto& q : v) vd.push_back(static_cast<double>(q));
  std::vector<double> vsorted = vd;
  std::sort(vsorted.rbegin(), vsorted.rend());

  struct Candidate {
    double score;
    std::uint64_t s;
    std::vector<Rational> w;
  };
  std::vector<Candidate> cands;
  double best = 0;
  ProfileEnumerator profiles(state_cap);
  for (std::uint64_t s = 1; s <= budget; ++s) {
    auto configs = profiles.chains(a, s, budget);
    if (configs.empty()) break;
    double scale = static_cast<double>(phi(s)) / static_cast<double>(s);
    for (auto& w : configs) {
      ++out.configurations;
      std::vector<double> wd;
      for (const auto& q : w) wd.push_back(static_cast<double>(q));
      auto ws = wd;
      std::sort(ws.rbegin(), ws.rend());
      double bound = 0;
      for (std::size_t i = 0; i < std::min(ws.size(), vsorted.size()); ++i) bound += ws[i] * vsorted[i];
      if (scale * bound < best * (1 - 1e-9)) continue;
      double score = scale * detail::best_matching(wd, vd, y);
      if (score > best) best = score;
      cands.push_back({score, s, std::move(w)});
    }
  }
  for (const auto& c : cands) {
    if (c.score < best * (1 - 1e-9)) continue;
    Rational inner = detail::best_matching(c.w, v, y);
    Real value = phi(c.s) / Real(c.s) * to_real(inner);
    if (value > out.value) {
      out.value = value;
      out.s = c.s;
      out.weights = c.w;
    }
  }
  return out;
}

}  // namespace schreierlab
