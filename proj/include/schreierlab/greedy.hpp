#pragma once

#include "schreierlab/spaces.hpp"

#include <random>

namespace schreierlab {

/// Indices of the m largest |x_i|; among equal moduli the smallest indices
/// win.
inline FiniteSet greedy_set(const BlockVector& x, const Int& m) {
  if (m < 0 || m > x.support_size())
    throw Error(ErrorKind::InvalidArgument, "greedy set order exceeds the support size");
  struct Segment {
    Rational modulus;
    Int lo, hi;
  };
  std::vector<Segment> segs;
  for (const auto& b : x.blocks()) {
    if (b.pattern == Pattern::Explicit) {
      for (std::size_t t = 0; t < b.values.size(); ++t) segs.push_back({abs(b.values[t]), b.lo + t, b.lo + t});
    } else {
      segs.push_back({abs(b.value), b.lo, b.hi});
    }
  }
  std::stable_sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.modulus > b.modulus; });
  std::vector<Interval> chosen;
  Int left = m;
  for (const auto& s : segs) {
    if (left == 0) break;
    Int take = std::min(left, Int(s.hi - s.lo + 1));
    chosen.push_back({s.lo, s.lo + take - 1});
    left -= take;
  }
  std::sort(chosen.begin(), chosen.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return FiniteSet::from_intervals(chosen);
}

inline BlockVector greedy_approx(const BlockVector& x, const Int& m) { return x.restrict_to(greedy_set(x, m)); }

inline BlockVector greedy_residual(const BlockVector& x, const Int& m) {
  auto G = greedy_set(x, m);
  std::vector<Interval> rest;
  Int at = 1;
  for (const auto& iv : G.intervals()) {
    if (at < iv.lo) rest.push_back({at, iv.lo - 1});
    at = iv.hi + 1;
  }
  if (!x.is_zero() && at <= x.support().max()) rest.push_back({at, x.support().max()});
  return x.restrict_to(FiniteSet::from_intervals(rest));
}

struct ScanInstance {
  std::string witness;
  nlohmann::json params;
  Real value;
  Real bound;
  Verdict verdict;
};

struct ScanReport {
  std::string name;
  std::vector<ScanInstance> instances;
  Real max_ratio = 0;
  std::optional<Real> trend_slope;

  void add(std::string witness, nlohmann::json params, Real value, Real bound, Verdict v) {
    instances.push_back({std::move(witness), std::move(params), std::move(value), std::move(bound), v});
  }

  /// value <= bound, with values known only up to a bracket [lo, hi].
  void add_le(std::string witness, nlohmann::json params, const Real& lo, const Real& hi, const Real& bound) {
    Verdict v = le_within(hi, bound) ? Verdict::Pass : lo > bound + envelope(lo, bound) ? Verdict::Fail : Verdict::Indeterminate;
    add(std::move(witness), std::move(params), lo, bound, v);
  }

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(instances.begin(), instances.end(), [&](const auto& i) { return i.verdict == v; }));
  }
  bool ok() const { return count(Verdict::Fail) == 0 && count(Verdict::Indeterminate) == 0; }

  void write_csv(std::ostream& os) const {
    os << "witness,params,value,bound,verdict\n";
    for (const auto& i : instances) {
      std::string p = i.params.dump();
      std::string quoted = "\"";
      for (char c : p) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      quoted += "\"";
      os << i.witness << "," << quoted << "," << decimal(i.value) << "," << decimal(i.bound) << "," << to_string(i.verdict) << "\n";
    }
  }

  nlohmann::json summary() const {
    nlohmann::json j = {{"scan", name},
                        {"instances", instances.size()},
                        {"pass", count(Verdict::Pass)},
                        {"fail", count(Verdict::Fail)},
                        {"indeterminate", count(Verdict::Indeterminate)},
                        {"max_ratio", decimal(max_ratio)}};
    if (trend_slope) j["trend_slope"] = decimal(*trend_slope);
    return j;
  }
};

namespace detail {

// Portable draws: the standard distributions differ across libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

inline BlockVector random_sparse(std::mt19937_64& rng, std::uint64_t max_count, std::uint64_t max_index) {
  std::map<std::uint64_t, Rational> entries;
  auto count = draw(rng, 1, max_count);
  while (entries.size() < count) {
    Rational v(static_cast<long>(draw(rng, 1, 16)), static_cast<long>(draw(rng, 1, 8)));
    if (draw(rng, 0, 1)) v = -v;
    entries[draw(rng, 1, max_index)] = v;
  }
  std::vector<std::pair<Int, Rational>> list;
  for (const auto& [i, v] : entries) list.emplace_back(i, v);
  return BlockVector::from_entries(list);
}

// A random member of S_gamma: a random set shifted right until it belongs.
inline FiniteSet random_schreier_set(std::mt19937_64& rng, const Ordinal& gamma, std::uint64_t max_size, std::uint64_t span) {
  auto size = gamma.is_zero() ? 1 : draw(rng, 1, max_size);
  std::set<std::uint64_t> picks;
  while (picks.size() < size) picks.insert(draw(rng, 1, span));
  std::vector<Int> elems(picks.begin(), picks.end());
  while (!is_member(FiniteSet::from_elements(elems), gamma))
    for (auto& e : elems) ++e;
  return FiniteSet::from_elements(elems);
}

inline Real slope(const std::vector<Real>& ys) {
  const std::size_t n = ys.size();
  if (n < 2) return 0;
  Real mx = Real(n - 1) / 2, my = 0;
  for (const auto& y : ys) my += y;
  my /= n;
  Real num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (Real(i) - mx) * (ys[i] - my);
    den += (Real(i) - mx) * (Real(i) - mx);
  }
  return num / den;
}

}  // namespace detail

struct ScanConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::uint64_t max_count = 12;
  std::uint64_t max_index = 64;
  Real ceiling = 10;  // sanity ceiling for |G_m(x)| / |x|
};

/// |G_m(x)| / |x| over random sparse vectors and all m, plus the sharpened
/// per-component bounds on thresholded vectors for eps in {1, 1/2, 1/4, 1/8}.
inline ScanReport qg_scan(const Space& X, const ScanConfig& cfg) {
  ScanReport r{"qg"};
  std::mt19937_64 rng(cfg.seed);
  const bool three = std::holds_alternative<ThreeSpace>(X);
  const Real component_bound = three ? Real(3) : Real(3) + sqrt(Real(2));
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto x = detail::random_sparse(rng, cfg.max_count, cfg.max_index);
    auto nx = norm(X, x);
    nlohmann::json base = {{"trial", t}, {"seed", cfg.seed}};
    for (Int m = 1; m <= x.support_size(); ++m) {
      auto ng = norm(X, greedy_approx(x, m));
      Real lo = ng.value / nx.upper, hi = ng.upper / nx.value;
      r.max_ratio = std::max(r.max_ratio, lo);
      auto p = base;
      p["m"] = m.str();
      r.add_le("greedy", p, lo, hi, cfg.ceiling);
    }
    for (int e = 0; e <= 3; ++e) {
      Real eps = Real(1) / (1 << e);
      // thresholds scale with |x| so that the vector is normalized
      Real cut_lo = eps * nx.value, cut_hi = eps * nx.upper;
      Real worst_lo = 0, worst_hi = 0;
      for (const auto& cut : {cut_lo, cut_hi}) {
        auto part = x.threshold(to_rational(cut), !three);
        Real v = three ? std::get<ThreeSpace>(X).seminorm4(part).value : std::get<FourSpace>(X).seminorm2(part);
        worst_lo = std::max(worst_lo, Real(v / nx.upper));
        worst_hi = std::max(worst_hi, Real(v / nx.value));
      }
      auto p = base;
      p["eps"] = decimal(eps, 4);
      r.add_le(three ? "threshold-4" : "threshold-2", p, worst_lo, worst_hi, component_bound);
    }
  }
  return r;
}

/// |1_A| / |1_B| for random A in S_gamma and B with |B| >= |A|, plus the
/// designated divergence witnesses of the space.
inline ScanReport democracy_scan(const Space& X, const Ordinal& gamma, const ScanConfig& cfg) {
  ScanReport r{"democracy"};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto A = detail::random_schreier_set(rng, gamma, cfg.max_count, cfg.max_index);
    std::set<std::uint64_t> b;
    auto bsize = static_cast<std::size_t>(A.size()) + detail::draw(rng, 0, 3);
    while (b.size() < bsize) b.insert(detail::draw(rng, 1, cfg.max_index));
    auto B = FiniteSet::from_elements(std::vector<Int>(b.begin(), b.end()));
    auto na = norm(X, BlockVector::indicator(A)), nb = norm(X, BlockVector::indicator(B));
    Real lo = na.value / nb.upper;
    r.max_ratio = std::max(r.max_ratio, lo);
    r.add("pair", {{"A", A.str()}, {"B", B.str()}}, lo, Real(0), Verdict::Pass);
  }
  std::vector<Real> ladder;
  if (const auto* f = std::get_if<FourSpace>(&X)) {
    for (std::uint64_t N = 1; N <= 12; ++N) {
      auto E = f->e_block(N);
      Real v = f->norm(E).value;
      ladder.push_back(v);
      r.add_le("eblock-lower", {{"N", N}}, sqrt(Real(N)), sqrt(Real(N)), v);
      // the same number of points placed as an S_1 set
      Int size = E.support_size();
      auto B = schreier_indicator(Ordinal::finite(1), size);
      Real vb = f->norm(B).value;
      r.add_le("s1-same-size", {{"N", N}}, vb, vb, Real(6));
      r.max_ratio = std::max(r.max_ratio, Real(v / vb));
    }
  } else {
    const auto& s = std::get<ThreeSpace>(X);
    for (const auto& n : s.gauge().n_seq()) {
      auto A = s.democracy_witness(n);
      Real v = s.seminorm2(A).value;
      Real nn = Real(n);
      Real lower = nn * ln(nn) + nn * (nn - 1) / 2;
      r.add_le("democracy-lower", {{"n", n.str()}}, lower, lower, v);
      Int size = A.support_size();
      Real upper = 6 * s.gauge().phi(Int(m_star(size, s.alpha().successor()) + 1));
      r.add("democracy-vs-bound", {{"n", n.str()}}, v / upper, Real(0), Verdict::Pass);
      r.max_ratio = std::max(r.max_ratio, Real(v / upper));
    }
  }
  if (!ladder.empty()) r.trend_slope = detail::slope(ladder);
  return r;
}

/// |P_A x| / |x| for random x and A in S_gamma, the monotonicity of the
/// unconditional seminorms under projection, and the designated witnesses.
inline ScanReport uncond_scan(const Space& X, const Ordinal& gamma, const ScanConfig& cfg) {
  ScanReport r{"uncond"};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto x = detail::random_sparse(rng, cfg.max_count, cfg.max_index);
    auto A = detail::random_schreier_set(rng, gamma, cfg.max_count, cfg.max_index);
    auto px = x.restrict_to(A);
    auto nx = norm(X, x), np = norm(X, px);
    Real lo = np.value / nx.upper;
    r.max_ratio = std::max(r.max_ratio, lo);
    r.add("projection", {{"trial", t}, {"A", A.str()}}, lo, Real(0), Verdict::Pass);
    auto full = unconditional_parts(X, x);
    auto proj = unconditional_parts(X, px);
    for (const auto& [name, v] : proj)
      for (const auto& [name2, w] : full)
        if (name == name2) r.add_le("monotone-" + name, {{"trial", t}}, v, v, w);
  }
  std::vector<Real> ladder;
  if (const auto* f = std::get_if<FourSpace>(&X)) {
    for (std::uint64_t N = 4; N <= 16; ++N) {
      Real nx = f->norm(f->xy_block(N, true)).value;
      Real ny = f->norm(f->xy_block(N, false)).value;
      ladder.push_back(ny / nx);
      r.add_le("xy-alternating-2", {{"N", N}}, f->seminorm2(f->xy_block(N, true)), f->seminorm2(f->xy_block(N, true)), Real(3));
    }
    for (std::size_t i = 1; i < ladder.size(); ++i)
      r.add("xy-ratio-increases", {{"N", 4 + i}}, ladder[i], ladder[i - 1],
            ladder[i] > ladder[i - 1] + envelope(ladder[i], ladder[i - 1]) ? Verdict::Pass : Verdict::Fail);
    r.max_ratio = std::max(r.max_ratio, ladder.back());
  } else {
    const auto& s = std::get<ThreeSpace>(X);
    for (const auto& m : s.gauge().m_seq()) {
      auto x = s.uncond_witness(m, false), y = s.uncond_witness(m, true);
      Real nx4 = s.seminorm4(x).value;
      Real lnm = ln(Real(m));
      // the asymptotic lower bound is reported, not asserted
      r.add("whyS1-x4", {{"m", m.str()}, {"active", nx4 >= lnm / 5}}, nx4, lnm / 5, Verdict::Pass);
      auto ny = s.norm(y);
      r.add_le("whyS1-y3", {{"m", m.str()}}, s.seminorm3(y).value, s.seminorm3(y).value,
               sqrt(Real(2)) * sqrt(std::max(lnm, Real(1))));
      r.add_le("whyS1-y4", {{"m", m.str()}}, s.seminorm4(y).value, s.seminorm4(y).value, Real(1));
      r.max_ratio = std::max(r.max_ratio, Real(nx4 / ny.upper));
    }
  }
  if (!ladder.empty()) r.trend_slope = detail::slope(ladder);
  return r;
}

}  // namespace schreierlab
