#pragma once

// Gauge functions on a bounded window. The seed function psi~ is sqrt(x) on
// [ln m_i, m_i], theta^2_{(a+1, n_i)} on [n_i, s_{(a+2, n_i)}(1)], 1 at x = 1,
// and linear in between. psi is its least concave majorant (upper hull over
// the sampled pieces), psi(x) = x on [0, 1], and phi = sqrt(psi). All
// logarithms are natural.

#include "schreierlab/check_log.hpp"
#include "schreierlab/schreier.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace schreierlab {

enum class PieceTag { SqrtSegment, ThetaSegment, Interp };

inline const char* to_string(PieceTag t) {
  switch (t) {
    case PieceTag::SqrtSegment: return "sqrt";
    case PieceTag::ThetaSegment: return "theta";
    case PieceTag::Interp: return "interp";
  }
  return "?";
}

inline PieceTag parse_piece_tag(const std::string& s) {
  if (s == "sqrt") return PieceTag::SqrtSegment;
  if (s == "theta") return PieceTag::ThetaSegment;
  if (s == "interp") return PieceTag::Interp;
  throw Error(ErrorKind::Parse, "unknown breakpoint tag '" + s + "'");
}

/// A point of psi~. `period` is the 1-based (m_i, n_i) index, `index` the
/// sample number within its piece; integer abscissae are kept exactly.
struct Breakpoint {
  Real x;
  Real value;
  PieceTag tag;
  std::size_t period = 0;
  std::uint64_t index = 0;
  std::optional<Int> exact_x;
};

/// One link of the interleaving chain
/// s_{(a+1,m_i)}(1) < ln n_i < s_{(a+2,n_i)}(1) < sqrt(ln m_{i+1}).
struct ChainLink {
  std::size_t period;
  std::string relation;
  bool verified;
  std::string detail;
};

struct GaugeParams {
  Ordinal alpha;
  std::vector<Int> m_seq;
  std::vector<Int> n_seq;
  Int window_max;
  unsigned precision_bits = 256;
  bool desk_relax = true;
  unsigned sqrt_samples = 64;
};

/// theta_{(a,m)} breakpoints s_{(a,m)}(k), k = 0.., while s(k) <= upto and
/// k <= kmax. A step past the digit cap ends the list when upto fits the cap.
inline std::vector<Int> theta_breakpoints(const Ordinal& a, const Int& m, const Int& upto, std::uint64_t kmax) {
  std::vector<Int> out{m};
  while (out.size() <= kmax) {
    Int next;
    try {
      next = gamma(a, out.back());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BudgetExceeded && !exceeds_budget(upto)) break;
      throw;
    }
    if (next > upto) break;
    out.push_back(std::move(next));
  }
  return out;
}

/// theta_{(a,m)}(x): ln m + k at s_{(a,m)}(k), linear in between.
inline Real theta_eval(const Ordinal& a, const Int& m, const Real& x) {
  if (x < Real(m)) throw Error(ErrorKind::InvalidArgument, "theta is defined on [m, oo)");
  Int lo = m;
  std::uint64_t k = 0;
  for (;;) {
    Int hi = gamma(a, lo);
    Real rhi(hi);
    if (x <= rhi) {
      Real rlo(lo);
      return ln(m) + Real(k) + (x - rlo) / (rhi - rlo);
    }
    lo = std::move(hi);
    ++k;
  }
}

class GaugeProfile {
 public:
  static GaugeProfile build(const GaugeParams& params);

  const Ordinal& alpha() const { return params_.alpha; }
  const std::vector<Int>& m_seq() const { return params_.m_seq; }
  const std::vector<Int>& n_seq() const { return params_.n_seq; }
  const Int& window_max() const { return params_.window_max; }
  const GaugeParams& params() const { return params_; }
  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const std::vector<std::size_t>& hull() const { return hull_; }
  const std::vector<ChainLink>& chain() const { return chain_; }

  Real psi(const Real& x) const {
    if (x < 0 || x > Real(params_.window_max))
      throw Error(ErrorKind::OutOfWindow, "gauge argument " + decimal(x) + " is outside [0, window_max]");
    if (x <= 1) return x;
    auto it = std::upper_bound(hull_.begin(), hull_.end(), x,
                               [&](const Real& v, std::size_t idx) { return v < points_[idx].x; });
    if (it == hull_.end()) return points_[hull_.back()].value;
    const auto& right = points_[*it];
    const auto& left = points_[*(it - 1)];
    if (left.tag == PieceTag::SqrtSegment && right.tag == PieceTag::SqrtSegment &&
        left.period == right.period && right.index == left.index + 1)
      return sqrt(x);
    return left.value + (right.value - left.value) * (x - left.x) / (right.x - left.x);
  }
  Real psi(const Int& x) const {
    if (x > params_.window_max) throw Error(ErrorKind::OutOfWindow, "gauge argument " + x.str() + " exceeds window_max");
    return psi(Real(x));
  }
  Real phi(const Real& x) const { return sqrt(psi(x)); }
  Real phi(const Int& x) const { return sqrt(psi(x)); }

  /// Properties a)-f) and the sandwich psi~ <= psi <= 2 psi~ at every
  /// breakpoint, plus `samples` interior points per theta segment for f).
  void check_properties(CheckLog& log, unsigned samples = 20) const;

  void write(std::ostream& os) const;
  static GaugeProfile read(std::istream& is);

 private:
  void compute_hull();

  GaugeParams params_;
  std::vector<Breakpoint> points_;
  std::vector<std::size_t> hull_;
  std::vector<ChainLink> chain_;
};

namespace detail {

inline void check_chain(const GaugeParams& p, std::vector<ChainLink>& chain) {
  const Ordinal& a = p.alpha;
  const Ordinal a1 = a.successor();
  const Ordinal a2 = a1.successor();
  for (std::size_t i = 0; i < p.m_seq.size(); ++i) {
    const Int& m = p.m_seq[i];
    const Int& n = p.n_seq[i];
    std::size_t period = i + 1;
    Real log_n = ln(n);

    Int s1 = gamma(a1, m);
    bool link1 = Real(s1) < log_n;
    if (!a.is_zero() && s_index(a, m, detail::to_index(m, "m_i")) != s1)
      throw Error(ErrorKind::InvalidSequence, "s_(a,m)(m) differs from s_(a+1,m)(1)");
    if (!link1)
      throw Error(ErrorKind::InvalidSequence, "period " + std::to_string(period) + ": s_(a+1,m)(1) = " +
                                                  s1.str() + " is not below ln n = " + decimal(log_n));
    chain.push_back({period, "s_(a+1,m)(1) < ln n", true, s1.str() + " < " + decimal(log_n)});

    // s_{(a+2,n)}(1) >= 2n because S_1 is inside S_{a+2}
    std::optional<Int> s2;
    try {
      s2 = gamma(a2, n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
    Real lower = s2 ? Real(*s2) : Real(2 * n);
    if (!(log_n < lower)) throw Error(ErrorKind::InvalidSequence, "ln n is not below s_(a+2,n)(1)");
    chain.push_back({period, "ln n < s_(a+2,n)(1)", true,
                     s2 ? decimal(log_n) + " < " + s2->str() : decimal(log_n) + " < 2n <= s_(a+2,n)(1)"});

    if (i + 1 < p.m_seq.size()) {
      Real bound = sqrt(ln(p.m_seq[i + 1]));
      if (s2) {
        if (!(Real(*s2) < bound))
          throw Error(ErrorKind::InvalidSequence, "s_(a+2,n)(1) is not below sqrt(ln m_next)");
        chain.push_back({period, "s_(a+2,n)(1) < sqrt(ln m_next)", true, s2->str() + " < " + decimal(bound)});
      } else if (p.desk_relax) {
        chain.push_back({period, "s_(a+2,n)(1) < sqrt(ln m_next)", false, "waived: exceeds digit cap"});
      } else {
        throw Error(ErrorKind::BudgetExceeded, "s_(a+2,n)(1) exceeds the digit cap and desk_relax is off");
      }
    } else if (p.desk_relax) {
      chain.push_back({period, "s_(a+2,n)(1) < sqrt(ln m_next)", false, "waived: no following period"});
    } else {
      throw Error(ErrorKind::InvalidSequence, "the last period has no successor and desk_relax is off");
    }
  }
}

}  // namespace detail

inline GaugeProfile GaugeProfile::build(const GaugeParams& params) {
  Limits l = limits();
  l.precision_bits = params.precision_bits;
  LimitsScope scope(l);

  const auto& ms = params.m_seq;
  const auto& ns = params.n_seq;
  if (ms.empty() || ms.size() != ns.size())
    throw Error(ErrorKind::InvalidSequence, "m and n sequences must be nonempty and of equal length");
  if (ms.front() < 2) throw Error(ErrorKind::InvalidSequence, "m_1 must be at least 2");
  Int prev = 1;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!(prev < ms[i] && ms[i] < ns[i]))
      throw Error(ErrorKind::InvalidSequence, "sequences must interleave 1 < m_1 < n_1 < m_2 < ...");
    prev = ns[i];
  }
  if (params.window_max < ns.back())
    throw Error(ErrorKind::InvalidSequence, "window_max must reach n_last");
  check_budget(params.window_max, "window_max");
  if (params.sqrt_samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two sqrt samples");

  GaugeProfile g;
  g.params_ = params;
  detail::check_chain(params, g.chain_);

  const Ordinal a1 = params.alpha.successor();
  // psi~ is only needed on [1, oo); a sqrt segment reaching below 1 is clipped
  // there, where it meets the anchor psi~(1) = 1.
  if (ln(ms.front()) > 1) g.points_.push_back({Real(1), Real(1), PieceTag::Interp, 0, 0, Int(1)});
  Real window(params.window_max);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::size_t period = i + 1;
    Real lo = boost::multiprecision::max(ln(ms[i]), Real(1));
    Real hi(ms[i]);
    if (lo > window) break;
    unsigned count = params.sqrt_samples;
    for (unsigned k = 0; k < count; ++k) {
      Real x = k + 1 == count ? hi : lo * pow(hi / lo, Real(k) / Real(count - 1));
      std::optional<Int> exact;
      if (k + 1 == count) exact = ms[i];
      if (x > window) break;
      g.points_.push_back({x, sqrt(x), PieceTag::SqrtSegment, period, k, exact});
    }
    const Int& n = ns[i];
    if (Real(n) > window) break;
    auto s = theta_breakpoints(a1, n, params.window_max, detail::to_index(n, "n_i"));
    Real base = ln(n);
    for (std::size_t k = 0; k < s.size(); ++k) {
      Real th = base + Real(k);
      g.points_.push_back({Real(s[k]), th * th, PieceTag::ThetaSegment, period, k, s[k]});
    }
    bool full_segment = s.size() == static_cast<std::size_t>(detail::to_index(n, "n_i")) + 1;
    if (!full_segment && s.back() < params.window_max) {
      Real th = theta_eval(a1, n, window);
      g.points_.push_back({window, th * th, PieceTag::ThetaSegment, period, s.size(), params.window_max});
    } else if (full_segment && i + 1 == ms.size() && s.back() < params.window_max) {
      throw Error(ErrorKind::InvalidSequence, "window_max extends past the last theta segment");
    }
  }
  g.compute_hull();
  return g;
}

inline void GaugeProfile::compute_hull() {
  hull_.clear();
  // upper hull by monotone chain; a middle point on or below the chord is dropped
  for (std::size_t j = 0; j < points_.size(); ++j) {
    while (hull_.size() >= 2) {
      const auto& o = points_[hull_[hull_.size() - 2]];
      const auto& m = points_[hull_.back()];
      const auto& p = points_[j];
      Real cross = (m.x - o.x) * (p.value - o.value) - (m.value - o.value) * (p.x - o.x);
      if (cross >= 0)
        hull_.pop_back();
      else
        break;
    }
    hull_.push_back(j);
  }
}

inline void GaugeProfile::check_properties(CheckLog& log, unsigned samples) const {
  Limits l = limits();
  l.precision_bits = params_.precision_bits;
  LimitsScope scope(l);

  log.expect(psi(Real(0)) == 0, "a) psi(0) = 0");
  log.expect_eq(psi(Real(1)), Real(1), "a) psi(1) = 1");

  std::vector<Real> values;
  values.reserve(points_.size());
  for (const auto& p : points_) values.push_back(psi(p.x));
  const Ordinal a1 = params_.alpha.successor();

  for (std::size_t j = 0; j < points_.size(); ++j) {
    const auto& p = points_[j];
    const Real& v = values[j];
    std::string at = " at x = " + decimal(p.x);
    nlohmann::json replay = {{"x", hexfloat(p.x)}, {"tag", to_string(p.tag)}, {"period", p.period}, {"index", p.index}};
    if (j + 1 < points_.size()) {
      const auto& q = points_[j + 1];
      const Real& w = values[j + 1];
      log.expect_le(v, w, "a) psi nondecreasing" + at, replay);
      log.expect_le(w / q.x, v / p.x, "a) psi(x)/x nonincreasing" + at, replay);
      if (j + 2 < points_.size()) {
        const auto& r = points_[j + 2];
        Real left = (w - v) / (q.x - p.x);
        Real right = (values[j + 2] - w) / (r.x - q.x);
        log.expect_le(right, left, "b) psi concave" + at, replay);
      }
    }
    log.expect_le(p.value, v, "psi~ <= psi" + at, replay);
    log.expect_le(v, 2 * p.value, "psi <= 2 psi~" + at, replay);
    log.expect_le(v, sqrt(p.x), "c) psi <= sqrt(x)" + at, replay);
    log.expect_le(sqrt(v), sqrt(sqrt(p.x)), "e) phi <= x^(1/4)" + at, replay);
    if (p.tag == PieceTag::SqrtSegment) {
      log.expect_eq(v, sqrt(p.x), "c) psi = sqrt(x) on [ln m, m]" + at, replay);
      log.expect_eq(sqrt(v), sqrt(sqrt(p.x)), "e) phi = x^(1/4) on [ln m, m]" + at, replay);
    }
    if (p.tag == PieceTag::ThetaSegment) {
      const Int& n = params_.n_seq[p.period - 1];
      Real th = theta_eval(a1, n, p.x);
      log.expect_le(th * th, v, "d) theta^2 <= psi" + at, replay);
      log.expect_le(v, 2 * th * th, "d) psi <= 2 theta^2" + at, replay);
      log.expect_le(th, sqrt(v), "f) theta <= phi" + at, replay);
      log.expect_le(sqrt(v), sqrt(Real(2)) * th, "f) phi <= sqrt(2) theta" + at, replay);
    }
  }

  // f) at interior points of each realised theta segment
  for (std::size_t i = 0; i < params_.n_seq.size(); ++i) {
    Real lo(params_.n_seq[i]);
    Real hi = lo;
    for (const auto& p : points_)
      if (p.tag == PieceTag::ThetaSegment && p.period == i + 1) hi = p.x;
    if (!(hi > lo)) continue;
    for (unsigned k = 0; k < samples; ++k) {
      Real t = (Real(k) + Real(0.5)) / Real(samples);
      Real x = lo * pow(hi / lo, t);
      Real th = theta_eval(a1, params_.n_seq[i], x);
      Real f = phi(x);
      nlohmann::json replay = {{"x", hexfloat(x)}, {"period", i + 1}};
      log.expect_le(th, f, "f) theta <= phi at sampled x = " + decimal(x), replay);
      log.expect_le(f, sqrt(Real(2)) * th, "f) phi <= sqrt(2) theta at sampled x = " + decimal(x), replay);
    }
  }
}

inline void GaugeProfile::write(std::ostream& os) const {
  os << "schreierlab-gauge 1\n";
  os << "log natural\n";
  os << "precision_bits " << params_.precision_bits << "\n";
  os << "alpha " << params_.alpha.str() << "\n";
  os << "m_seq";
  for (const auto& m : params_.m_seq) os << ' ' << m.str();
  os << "\nn_seq";
  for (const auto& n : params_.n_seq) os << ' ' << n.str();
  os << "\nwindow_max " << params_.window_max.str() << "\n";
  os << "desk_relax " << (params_.desk_relax ? 1 : 0) << "\n";
  os << "sqrt_samples " << params_.sqrt_samples << "\n";
  for (const auto& c : chain_)
    os << "chain " << c.period << ' ' << (c.verified ? "verified" : "waived") << " | " << c.relation << " | "
       << c.detail << "\n";
  for (const auto& p : points_)
    os << "point " << to_string(p.tag) << ' ' << p.period << ' ' << p.index << ' '
       << (p.exact_x ? p.exact_x->str() : std::string("-")) << ' ' << hexfloat(p.x) << ' ' << hexfloat(p.value)
       << "\n";
  os << "hull";
  for (auto h : hull_) os << ' ' << h;
  os << "\nend\n";
}

inline GaugeProfile GaugeProfile::read(std::istream& is) {
  GaugeProfile g;
  std::string line;
  bool header = false, ended = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "schreierlab-gauge") {
      int version = 0;
      ls >> version;
      if (version != 1) throw Error(ErrorKind::Parse, "unsupported gauge file version");
      header = true;
    } else if (!header) {
      throw Error(ErrorKind::Parse, "not a gauge profile file");
    } else if (key == "log") {
      std::string base;
      ls >> base;
      if (base != "natural") throw Error(ErrorKind::Parse, "only natural logarithms are supported");
    } else if (key == "precision_bits") {
      ls >> g.params_.precision_bits;
    } else if (key == "alpha") {
      std::string a;
      ls >> a;
      g.params_.alpha = Ordinal::parse(a);
    } else if (key == "m_seq" || key == "n_seq") {
      auto& seq = key == "m_seq" ? g.params_.m_seq : g.params_.n_seq;
      std::string v;
      while (ls >> v) seq.push_back(parse_int(v));
    } else if (key == "window_max") {
      std::string v;
      ls >> v;
      g.params_.window_max = parse_int(v);
    } else if (key == "desk_relax") {
      int v = 0;
      ls >> v;
      g.params_.desk_relax = v != 0;
    } else if (key == "sqrt_samples") {
      ls >> g.params_.sqrt_samples;
    } else if (key == "chain") {
      ChainLink c;
      std::string status;
      ls >> c.period >> status;
      c.verified = status == "verified";
      std::string rest;
      std::getline(ls, rest);
      auto bar1 = rest.find(" | ");
      auto bar2 = rest.find(" | ", bar1 + 3);
      if (bar1 == std::string::npos || bar2 == std::string::npos) throw Error(ErrorKind::Parse, "bad chain line");
      c.relation = rest.substr(bar1 + 3, bar2 - bar1 - 3);
      c.detail = rest.substr(bar2 + 3);
      g.chain_.push_back(std::move(c));
    } else if (key == "point") {
      Limits l = limits();
      l.precision_bits = g.params_.precision_bits;
      LimitsScope scope(l);
      std::string tag, exact, x, v;
      Breakpoint p;
      ls >> tag >> p.period >> p.index >> exact >> x >> v;
      if (!ls) throw Error(ErrorKind::Parse, "bad point line");
      p.tag = parse_piece_tag(tag);
      if (exact != "-") p.exact_x = parse_int(exact);
      p.x = parse_hexfloat(x);
      p.value = parse_hexfloat(v);
      g.points_.push_back(std::move(p));
    } else if (key == "hull") {
      // recomputed below
    } else if (key == "end") {
      ended = true;
      break;
    } else {
      throw Error(ErrorKind::Parse, "unknown gauge key '" + key + "'");
    }
  }
  if (!ended || g.points_.empty()) throw Error(ErrorKind::Parse, "truncated gauge profile");
  for (std::size_t j = 1; j < g.points_.size(); ++j)
    if (!(g.points_[j - 1].x < g.points_[j].x)) throw Error(ErrorKind::Parse, "breakpoints are not increasing");
  g.compute_hull();
  return g;
}

/// The reference desk profile: a = 0, m_1 = 3, n_1 = 500, window 500 * 2^500.
inline GaugeParams desk_params(unsigned precision_bits = 256) {
  GaugeParams p;
  p.alpha = Ordinal::finite(0);
  p.m_seq = {Int(3)};
  p.n_seq = {Int(500)};
  p.window_max = Int(500) << 500;
  p.precision_bits = precision_bits;
  return p;
}

/// theta_{(a,m)}(s(i)) = ln m + i <= s(i)^(1/4) for i <= imax. Between
/// breakpoints the bound follows from concavity of the quartic root.
inline void check_theta_quartic(const Ordinal& a, const Int& m, std::uint64_t imax, CheckLog& log) {
  Int s = m;
  Real base = ln(m);
  for (std::uint64_t i = 0; i <= imax; ++i) {
    Real lhs = base + Real(i);
    log.expect_le(lhs, sqrt(sqrt(Real(s))), "theta <= x^(1/4) at s(" + std::to_string(i) + ")",
                  {{"alpha", a.str()}, {"m", m.str()}, {"i", i}});
    if (i < imax) s = gamma(a, s);
  }
}

/// theta^2_{(a,m)}(x)/x strictly decreases across s(0..imax), sampled
/// `interior` times inside each gap.
inline void check_theta_ratio(const Ordinal& a, const Int& m, std::uint64_t imax, unsigned interior, CheckLog& log) {
  Real base = ln(m);
  Int lo = m;
  Real prev;
  bool have_prev = false;
  for (std::uint64_t i = 0; i < imax; ++i) {
    Int hi = gamma(a, lo);
    Real rlo(lo), rhi(hi);
    for (unsigned k = 0; k <= interior; ++k) {
      Real t = Real(k) / Real(interior + 1);
      Real x = rlo + t * (rhi - rlo);
      Real th = base + Real(i) + t;
      Real ratio = th * th / x;
      if (have_prev)
        log.expect_lt(ratio, prev, "theta^2/x strictly decreasing near s(" + std::to_string(i) + ")",
                      {{"alpha", a.str()}, {"m", m.str()}, {"i", i}, {"k", k}});
      prev = ratio;
      have_prev = true;
    }
    lo = std::move(hi);
  }
}

}  // namespace schreierlab
