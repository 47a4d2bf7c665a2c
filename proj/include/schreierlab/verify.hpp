#pragma once

#include "schreierlab/check_log.hpp"
#include "schreierlab/config.hpp"
#include "schreierlab/greedy.hpp"
#include "schreierlab/oracle.hpp"
#include "schreierlab/spaces.hpp"

#include <chrono>

namespace schreierlab {

/// Outcome of one suite: instance checks, failures with replay data,
/// skipped sub-checks with reasons, and measured values worth reporting.
struct SuiteResult {
  std::string id;
  std::string claim;
  CheckLog log;
  nlohmann::json notes = nlohmann::json::object();
  std::optional<double> seconds;

  /// "fail" on any failure; otherwise "skipped" when nothing ran, "partial"
  /// when some sub-checks were skipped, else "pass".
  std::string status() const {
    if (!log.ok()) return "fail";
    if (log.instances() == 0) return "skipped";
    return log.skipped().empty() ? "pass" : "partial";
  }

  nlohmann::json to_json() const {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : log.failures()) failures.push_back({{"what", f.what}, {"replay", f.replay}});
    nlohmann::json j = {{"id", id},
                        {"claim", claim},
                        {"status", status()},
                        {"instances", log.instances()},
                        {"failure_count", log.failure_count()},
                        {"indeterminate", log.indeterminate()},
                        {"failures", failures},
                        {"skipped", log.skipped()},
                        {"notes", notes}};
    if (seconds) j["seconds"] = *seconds;
    return j;
  }
};

/// Shared state for a run: the configuration and the spaces built from it.
/// Spaces are built on first use and reused by later suites.
class VerifyContext {
 public:
  explicit VerifyContext(RunConfig cfg) : cfg_(std::move(cfg)) {
    auto& audit = average_audit();
    base_constructed_ = audit.constructed;
    base_violations_ = audit.violations;
    base_partition_checks_ = audit.partition_checks;
  }

  const RunConfig& config() const { return cfg_; }

  std::shared_ptr<const GaugeProfile> gauge() {
    if (!gauge_) {
      if (cfg_.profile_path) {
        std::ifstream in(*cfg_.profile_path);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open profile '" + *cfg_.profile_path + "'");
        gauge_ = std::make_shared<const GaugeProfile>(GaugeProfile::read(in));
      } else {
        auto p = cfg_.gauge;
        p.precision_bits = cfg_.precision_bits;
        gauge_ = std::make_shared<const GaugeProfile>(GaugeProfile::build(p));
      }
    }
    return gauge_;
  }

  const ThreeSpace& three() {
    if (!three_) three_.emplace(gauge(), SearchCaps{cfg_.support_cap, cfg_.index_cap, 256});
    return *three_;
  }

  const FourSpace& four() {
    if (!four_) four_.emplace(cfg_.s4_alpha);
    return *four_;
  }

  /// Deterministic generator for a suite, independent of suite order.
  std::mt19937_64 rng(const std::string& id) const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return std::mt19937_64(cfg_.seed ^ h);
  }

  std::uint64_t constructed_since_start() const { return average_audit().constructed - base_constructed_; }
  std::uint64_t violations_since_start() const { return average_audit().violations - base_violations_; }
  std::uint64_t partition_checks_since_start() const { return average_audit().partition_checks - base_partition_checks_; }

 private:
  RunConfig cfg_;
  std::shared_ptr<const GaugeProfile> gauge_;
  std::optional<ThreeSpace> three_;
  std::optional<FourSpace> four_;
  std::uint64_t base_constructed_ = 0, base_violations_ = 0, base_partition_checks_ = 0;
};

using SuiteFn = void (*)(VerifyContext&, SuiteResult&);

struct SuiteSpec {
  std::string id;
  std::string claim;
  SuiteFn run;
};

namespace suites {

using detail::draw;

inline bool budget_error(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::CapExceeded;
}

inline void absorb(CheckLog& log, const ScanReport& r) {
  for (const auto& i : r.instances)
    log.record(i.verdict, r.name + "/" + i.witness + " " + decimal(i.value) + " vs " + decimal(i.bound),
               {{"witness", i.witness}, {"params", i.params}});
}

// Random set of 1..max_size points drawn from one of several spans, so that
// small and far-out supports both occur.
inline FiniteSet random_set(std::mt19937_64& rng, std::uint64_t max_size) {
  static constexpr std::uint64_t spans[] = {12, 64, 600, 3000};
  auto span = spans[draw(rng, 0, 3)];
  auto size = draw(rng, 1, std::min(max_size, span));
  std::set<std::uint64_t> picks;
  while (picks.size() < size) picks.insert(draw(rng, 1, span));
  return FiniteSet::from_elements(std::vector<Int>(picks.begin(), picks.end()));
}

inline FiniteSet random_member(std::mt19937_64& rng, const Ordinal& a, std::uint64_t max_size) {
  static constexpr std::uint64_t spans[] = {12, 64, 600, 3000};
  return detail::random_schreier_set(rng, a, max_size, spans[draw(rng, 0, 3)]);
}

inline nlohmann::json replay_set(const FiniteSet& E) { return {{"set", E.str()}}; }

inline void schreier_oracle(VerifyContext& ctx, SuiteResult& r) {
  const unsigned n = ctx.config().oracle_universe;
  if (n > 16) throw Error(ErrorKind::InvalidArgument, "oracle.universe is at most 16");
  oracle::SchreierFamilies fam(n);
  for (auto a : {Ordinal::finite(1), Ordinal::finite(2)}) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Int> elems;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) elems.emplace_back(i + 1);
      auto E = FiniteSet::from_elements(elems);
      r.log.expect(is_member(E, a) == fam.contains(a, mask), "membership in S_" + a.str() + " of " + E.str(),
                   {{"alpha", a.str()}, {"set", E.str()}});
    }
  }
}

inline void block_sum_bound(VerifyContext& ctx, SuiteResult& r) {
  auto rng = ctx.rng(r.id);
  for (auto a : {Ordinal::finite(1), Ordinal::finite(2)}) {
    for (std::size_t t = 0; t < ctx.config().block_sum_instances; ++t) {
      Int m(draw(rng, 1, 8));
      auto count = draw(rng, 1, 5);
      std::vector<RepeatedAverage> blocks;
      for (; count > 0; --count) {
        try {
          blocks = averages_along(a, m, count);
          break;
        } catch (const Error& e) {
          if (!budget_error(e)) throw;
        }
      }
      // candidate points near every block start and scattered over the
      // first few thousand integers; keep each one that stays in S_a
      std::set<Int> cands;
      Int reach = std::min(blocks.back().support().max(), Int(4000));
      for (const auto& b : blocks) {
        for (int k = 0; k < 4; ++k) cands.insert(b.support().min() + draw(rng, 0, 24));
        if (b.support().max() - 24 >= b.support().min()) cands.insert(b.support().max() - draw(rng, 0, 24));
      }
      for (int k = 0; k < 12; ++k) cands.insert(Int(draw(rng, 1, static_cast<std::uint64_t>(reach))));
      std::vector<Int> elems;
      for (const auto& c : cands) {
        if (c < 1) continue;
        elems.push_back(c);
        if (!is_member(FiniteSet::from_elements(elems), a)) elems.pop_back();
      }
      auto F = FiniteSet::from_elements(elems);
      Rational s = block_sum(a, blocks, F);
      r.log.expect(s <= 6, "block sum " + to_string(s) + " exceeds 6",
                   {{"alpha", a.str()}, {"m", m.str()}, {"blocks", blocks.size()}, {"set", F.str()}});
    }
  }
}

inline void average_invariants(VerifyContext& ctx, SuiteResult& r) {
  // a fixed sweep so that the suite also stands alone
  for (const char* s : {"0", "1", "2", "3", "w", "w+1", "w*2", "w^2"}) {
    auto a = Ordinal::parse(s);
    for (int m = 1; m <= 6; ++m) {
      for (std::uint64_t count = 4; count > 0; --count) {
        try {
          averages_along(a, m, count);
          break;
        } catch (const Error& e) {
          if (!budget_error(e)) throw;
        }
      }
    }
  }
  auto built = ctx.constructed_since_start();
  auto bad = ctx.violations_since_start();
  r.log.expect(built > 0, "no averages were constructed");
  r.log.expect(bad == 0, "average invariant violated: " + average_audit().first_violation);
  r.log.expect(ctx.partition_checks_since_start() > 0, "no partition consistency checks ran");
  r.notes["averages_constructed"] = built;
  r.notes["partition_checks"] = ctx.partition_checks_since_start();
  r.notes["violations"] = bad;
}

inline void theta_orders(VerifyContext& ctx, SuiteResult& r, bool quartic) {
  const auto& cfg = ctx.config();
  Ordinal first = cfg.gauge.alpha.successor();
  for (const auto& a : {first, first.successor()}) {
    try {
      if (quartic) check_theta_quartic(a, cfg.theta_m, cfg.theta_imax, r.log);
      else check_theta_ratio(a, cfg.theta_m, cfg.theta_imax, 8, r.log);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.log.skip("order " + a.str() + ": breakpoints past the digit budget (" + e.what() + ")");
    }
  }
}

inline void theta_quartic(VerifyContext& ctx, SuiteResult& r) { theta_orders(ctx, r, true); }
inline void theta_ratio(VerifyContext& ctx, SuiteResult& r) { theta_orders(ctx, r, false); }

inline void gauge_properties(VerifyContext& ctx, SuiteResult& r) {
  ctx.gauge()->check_properties(r.log);
}

inline void gauge_chain(VerifyContext& ctx, SuiteResult& r) {
  for (const auto& c : ctx.gauge()->chain()) {
    if (c.verified) r.log.expect(true, c.relation);
    else r.log.skip("period " + std::to_string(c.period) + " " + c.relation + ": " + c.detail);
  }
}

inline void packing_bound(VerifyContext& ctx, SuiteResult& r) {
  const unsigned n = ctx.config().oracle_universe;
  for (auto a : {Ordinal::finite(1), Ordinal::finite(2)}) {
    Ordinal next = a.successor();
    std::map<std::size_t, Int> mstar;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Int> elems;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) elems.emplace_back(i + 1);
      auto E = FiniteSet::from_elements(elems);
      if (!is_member(E, next)) continue;
      auto [it, fresh] = mstar.emplace(elems.size(), Int(0));
      if (fresh) it->second = m_star(Int(elems.size()), next);
      auto t = t_alpha(E, a);
      r.log.expect(Int(t) <= it->second, "t = " + std::to_string(t) + " exceeds m = " + it->second.str(),
                   {{"alpha", a.str()}, {"set", E.str()}});
    }
  }
}

inline void half_size_start(VerifyContext& ctx, SuiteResult& r) {
  for (auto a : {Ordinal::finite(1), Ordinal::finite(2)}) {
    for (std::uint64_t m = 1; m <= ctx.config().half_start_max; ++m) {
      Int p1 = m_star(Int(m), a);
      Int p2 = m_star(Int((m + 1) / 2), a);
      r.log.expect(2 * p2 >= p1, "2 p2 < p1: p1 = " + p1.str() + ", p2 = " + p2.str(),
                   {{"alpha", a.str()}, {"m", m}});
    }
  }
}

// phi(m+1) with m least such that [m, m+|E|-1] lies in S_(a+1).
inline Real indicator_scale(const ThreeSpace& X, const Int& size) {
  return X.gauge().phi(Int(m_star(size, X.alpha().successor()) + 1));
}

inline void indicator_bounds(VerifyContext& ctx, SuiteResult& r, int which) {
  const auto& X = ctx.three();
  auto rng = ctx.rng(r.id);
  Ordinal next = X.alpha().successor();
  for (std::size_t t = 0; t < ctx.config().sandwich_instances; ++t) {
    auto E = which == 2 ? random_member(rng, next, 12) : random_set(rng, 12);
    auto x = BlockVector::indicator(E);
    Real phi = indicator_scale(X, E.size());
    auto replay = replay_set(E);
    switch (which) {
      case 1: {
        auto v = X.seminorm1(x);
        r.log.expect_bracket_le(v.value, v.upper, 6 * phi, "first seminorm above 6 phi(m+1)", replay);
        break;
      }
      case -1: {
        auto v = X.seminorm1(x);
        Real bound = phi / 6;
        Verdict verdict = le_within(bound, v.value) ? Verdict::Pass
                          : le_within(bound, v.upper) ? Verdict::Indeterminate
                                                      : Verdict::Fail;
        r.log.record(verdict, "first seminorm below phi(m+1)/6", replay);
        break;
      }
      case 2:
        r.log.expect_le(X.seminorm2(x).value, 6 * phi, "second seminorm above 6 phi(m+1)", replay);
        break;
      case 3:
        r.log.expect_le(X.seminorm3(x).value, sqrt(Real(6)) * phi, "third seminorm above sqrt(6) phi(m+1)", replay);
        r.log.expect_le(X.seminorm4(x).value, 6 * phi, "fourth seminorm above 6 phi(m+1)", replay);
        break;
    }
  }
}

inline void first_upper(VerifyContext& ctx, SuiteResult& r) { indicator_bounds(ctx, r, 1); }
inline void first_lower(VerifyContext& ctx, SuiteResult& r) { indicator_bounds(ctx, r, -1); }
inline void second_upper(VerifyContext& ctx, SuiteResult& r) { indicator_bounds(ctx, r, 2); }
inline void third_fourth_upper(VerifyContext& ctx, SuiteResult& r) { indicator_bounds(ctx, r, 3); }

inline void democracy_constant(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.three();
  auto rng = ctx.rng(r.id);
  Ordinal next = X.alpha().successor();
  Real worst = 0;
  for (std::size_t t = 0; t < ctx.config().scan_trials; ++t) {
    auto A = random_member(rng, next, 12);
    auto B = random_set(rng, 12);
    while (B.size() < A.size()) B = random_set(rng, 12);
    auto na = X.norm(BlockVector::indicator(A));
    auto nb = X.norm(BlockVector::indicator(B));
    worst = std::max(worst, Real(na.value / nb.upper));
    r.log.expect_bracket_le(na.value, na.upper, 36 * nb.value, "|1_A| above 36 |1_B|",
                            {{"A", A.str()}, {"B", B.str()}});
  }
  r.notes["max_ratio"] = decimal(worst, 10);
}

inline void democracy_divergence(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.three();
  const auto& g = X.gauge();
  Ordinal next = X.alpha().successor();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& n : g.n_seq()) {
    auto A = X.democracy_witness(n);
    Real value = X.seminorm2(A).value;
    Real rn(n);
    Real lower = rn * ln(rn) + rn * (rn - 1) / 2;
    nlohmann::json replay = {{"n", n.str()}};
    r.log.expect_le(lower, value, "second seminorm of the long interval below n ln n + n(n-1)/2", replay);

    // the same value summed directly over the partition starts
    Real direct = 0;
    Int start_sum = 0;
    Int s = n;
    auto kmax = detail::to_index(n, "n");
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      direct += g.phi(s);
      start_sum += s;
      if (k < kmax) s = gamma(next, s);
    }
    r.log.expect_eq(value, direct, "second seminorm differs from the sum of phi at the block starts", replay);

    Int size = A.support_size();
    Int mprime = m_star(size, next);
    r.log.expect(mprime <= start_sum, "least start exceeds the sum of block starts", replay);
    auto B = BlockVector::indicator(FiniteSet::interval(mprime, mprime + size - 1));
    auto nb = X.norm(B);
    Real bound = 6 * g.phi(Int(mprime + 1));
    Real closed = 18 * sqrt(Real(2)) * (ln(rn) + rn - 1);
    r.log.expect_bracket_le(nb.value, nb.upper, bound, "|1_B| above 6 phi(m'+1)", replay);
    r.log.expect_bracket_le(nb.value, nb.upper, closed, "|1_B| above 18 sqrt(2) (ln n + n - 1)", replay);
    rows.push_back({{"n", n.str()},
                    {"second_seminorm", decimal(value, 16)},
                    {"lower", decimal(lower, 16)},
                    {"b_norm", decimal(nb.upper, 16)},
                    {"b_bound", decimal(bound, 16)},
                    {"closed_bound", decimal(closed, 16)},
                    {"ratio_to_bound", decimal(value / bound, 10)},
                    {"ratio_to_b", decimal(value / nb.upper, 10)}});
  }
  r.notes["witnesses"] = rows;
}

inline void uncond_projection(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.three();
  auto rng = ctx.rng(r.id);
  for (std::size_t t = 0; t < ctx.config().scan_trials; ++t) {
    auto x = detail::random_sparse(rng, 12, 64);
    auto E = random_member(rng, X.alpha(), 12);
    auto px = x.restrict_to(E);
    auto nx = X.norm(x);
    nlohmann::json replay = {{"trial", t}, {"x", x.str()}, {"set", E.str()}};
    // with |x| normalised, the partial sums of the projection stay below 6
    r.log.expect_le(X.seminorm4(px).value, 6 * nx.value, "projected partial sums above 6 |x|", replay);
    auto np = X.norm(px);
    r.log.expect_bracket_le(np.value, np.upper, 6 * nx.value, "|P_E x| above 6 |x|", replay);
  }
}

inline void uncond_sum_bound(VerifyContext& ctx, SuiteResult& r) {
  const auto& g = *ctx.gauge();
  for (const auto& m : g.m_seq()) {
    Real bound = sqrt(sqrt(ln(m))) + 3;
    Real sum = 0;
    auto q_max = detail::to_index(m, "m");
    for (std::uint64_t q = 1; q <= q_max; ++q) {
      sum += 1 / g.phi(Int(q));
      Real lhs = g.phi(Int(q)) / Real(q) * sum;
      r.log.expect_le(lhs, bound, "phi(q)/q sum 1/phi(i) above ln^(1/4) m + 3", {{"m", m.str()}, {"q", q}});
    }
  }
}

inline void uncond_divergence(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.three();
  const auto& g = X.gauge();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : g.m_seq()) {
    auto x = X.uncond_witness(m, false);
    auto y = X.uncond_witness(m, true);
    nlohmann::json replay = {{"m", m.str()}};
    Real closed = 0;
    for (std::uint64_t k = 1; k <= detail::to_index(m, "m"); ++k)
      closed += (g.phi(Int(k)) - g.phi(Int(k - 1))) / g.phi(Int(k));
    Real x4 = X.seminorm4(x).value;
    r.log.expect_eq(x4, closed, "fourth seminorm of x differs from sum (phi(k)-phi(k-1))/phi(k)", replay);
    Real lnm = ln(Real(m));
    r.log.expect(X.seminorm2(y).value == 0, "second seminorm of y is not zero", replay);
    r.log.expect_le(X.seminorm4(y).value, Real(1), "fourth seminorm of y above 1", replay);
    r.log.expect_le(X.seminorm3(y).value, sqrt(Real(2)) * sqrt(lnm), "third seminorm of y above sqrt(2 ln m)", replay);
    auto y1 = X.seminorm1(y);
    r.log.expect_bracket_le(y1.value, y1.upper, sqrt(sqrt(lnm)) + 3, "first seminorm of y above ln^(1/4) m + 3",
                            replay);
    auto ny = X.norm(y);
    rows.push_back({{"m", m.str()},
                    {"x_fourth", decimal(x4, 16)},
                    {"asymptotic_lower", decimal(lnm / 5, 16)},
                    {"asymptotic_regime_active", x4 >= lnm / 5},
                    {"y_norm", decimal(ny.upper, 16)},
                    {"ratio", decimal(x4 / ny.upper, 10)}});
  }
  r.notes["witnesses"] = rows;
}

inline void qg_three(VerifyContext& ctx, SuiteResult& r) {
  ScanConfig cfg;
  cfg.seed = ctx.rng(r.id)();
  cfg.trials = ctx.config().qg_trials;
  Space X = ctx.three();
  auto report = qg_scan(X, cfg);
  absorb(r.log, report);
  r.notes["max_greedy_ratio"] = decimal(report.max_ratio, 10);
}

inline void qg_four(VerifyContext& ctx, SuiteResult& r) {
  ScanConfig cfg;
  cfg.seed = ctx.rng(r.id)();
  cfg.trials = ctx.config().qg_trials;
  Space X = ctx.four();
  auto report = qg_scan(X, cfg);
  absorb(r.log, report);
  r.notes["max_greedy_ratio"] = decimal(report.max_ratio, 10);
}

inline Real root_harmonic(std::uint64_t N) {
  Real s = 0;
  for (std::uint64_t j = 1; j <= N; ++j) s += 1 / sqrt(Real(j));
  return s;
}

inline Real harmonic(std::uint64_t N) {
  Real s = 0;
  for (std::uint64_t j = 1; j <= N; ++j) s += 1 / Real(j);
  return s;
}

inline bool rel_close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol * std::max(Real(abs(a)), Real(abs(b))); }

// A member of S_a with exactly `size` points, split into up to three
// intervals with random gaps and shifted right until it belongs.
inline FiniteSet spread_member(std::mt19937_64& rng, const Ordinal& a, const Int& size) {
  Int lo = m_star(size, a) + Int(draw(rng, 0, 8));
  auto pieces = size < 3 ? 1 : draw(rng, 1, 3);
  std::vector<Interval> ivs;
  Int left = size;
  for (std::uint64_t p = 0; p < pieces; ++p) {
    Int len = p + 1 == pieces ? left : std::max(Int(1), left / Int(draw(rng, 2, 4)));
    if (len > left - Int(pieces - p - 1)) len = left - Int(pieces - p - 1);
    ivs.push_back({lo, lo + len - 1});
    left -= len;
    lo += len + Int(draw(rng, 1, 1000));
  }
  auto A = FiniteSet::from_intervals(ivs);
  while (!is_member(A, a)) A = A.shifted(A.size());
  return A;
}

inline void block_democracy(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.four();
  auto rng = ctx.rng(r.id);
  const Real tol("1e-9");
  nlohmann::json ratios = nlohmann::json::array();
  for (std::uint64_t N = 1; N <= 12; ++N) {
    auto E = X.e_block(N);
    auto v = X.norm(E).value;
    Real closed = root_harmonic(N);
    nlohmann::json replay = {{"N", N}};
    r.log.expect(rel_close(v, closed, tol), "|1_E_N| = " + decimal(v) + " differs from " + decimal(closed), replay);
    r.log.expect_le(sqrt(Real(N)), v, "|1_E_N| below sqrt(N)", replay);
    for (int k = 0; k < 3; ++k) {
      auto A = spread_member(rng, X.alpha(), E.support_size());
      Real va = X.norm(BlockVector::indicator(A)).value;
      r.log.expect_le(va, Real(6), "same-size member above 6", {{"N", N}, {"set", A.str()}});
      if (k == 0) ratios.push_back(decimal(v / va, 10));
    }
  }
  for (std::size_t t = 0; t < ctx.config().scan_trials; ++t) {
    auto A = random_member(rng, X.alpha(), 12);
    r.log.expect_le(X.norm(BlockVector::indicator(A)).value, Real(6), "member indicator above 6", replay_set(A));
  }
  r.notes["ratio_by_N"] = ratios;
}

inline void block_uncond(VerifyContext& ctx, SuiteResult& r) {
  const auto& X = ctx.four();
  auto rng = ctx.rng(r.id);
  const Real tol("1e-9");
  std::vector<Real> ladder;
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t N = 4; N <= 16; ++N) {
    auto x = X.xy_block(N, true), y = X.xy_block(N, false);
    nlohmann::json replay = {{"N", N}};
    Real H = harmonic(N);
    Real x1 = X.seminorm1(x), x2 = X.seminorm2(x);
    r.log.expect(rel_close(x1, sqrt(H), tol), "|x_N|_1 differs from sqrt(H_N)", replay);
    r.log.expect(rel_close(X.seminorm1(y), sqrt(H), tol), "|y_N|_1 differs from sqrt(H_N)", replay);
    r.log.expect_lt(x2, Real(3), "alternating partial sums not below 3", replay);
    Real y2 = X.seminorm2(y);
    r.log.expect_le(H, y2, "|y_N|_2 below H_N", replay);
    Real nx = X.norm(x).value, ny = X.norm(y).value;
    ladder.push_back(ny / nx);
    rows.push_back({{"N", N}, {"x_norm", decimal(nx, 12)}, {"y_norm", decimal(ny, 12)}, {"ratio", decimal(ny / nx, 12)}});
  }
  for (std::size_t i = 1; i < ladder.size(); ++i)
    r.log.expect_lt(ladder[i - 1], ladder[i], "ratio |y_N|/|x_N| not increasing", {{"N", 4 + i}});
  r.log.expect_lt(Real("1.8"), ladder.back(), "ratio at N = 16 not above 1.8");
  for (std::size_t t = 0; t < ctx.config().scan_trials; ++t) {
    auto x = detail::random_sparse(rng, 12, 64);
    auto E = random_member(rng, X.alpha(), 12);
    auto px = x.restrict_to(E);
    Real nx = X.norm(x).value;
    nlohmann::json replay = {{"trial", t}, {"x", x.str()}, {"set", E.str()}};
    r.log.expect_le(X.seminorm2(px), 6 * nx, "projected partial sums above 6 |x|", replay);
    r.log.expect_le(X.seminorm0(px), X.seminorm0(x), "sup seminorm grew under projection", replay);
    r.log.expect_le(X.seminorm1(px), X.seminorm1(x), "square seminorm grew under projection", replay);
  }
  r.notes["ladder"] = rows;
}

// First `count` periods, extending the configured sequences by
// m_(i+1) = 2 n_i and n_(i+1) = m_(i+1) + 1.
inline std::pair<std::vector<Int>, std::vector<Int>> extra_periods(const RunConfig& cfg, std::size_t count) {
  auto m = cfg.s4ab_m, n = cfg.s4ab_n;
  while (m.size() < count) {
    m.push_back(2 * n.back());
    n.push_back(m.back() + 1);
  }
  m.resize(count);
  n.resize(count);
  return {m, n};
}

inline void extra_democracy(VerifyContext& ctx, SuiteResult& r) {
  const auto& cfg = ctx.config();
  auto rng = ctx.rng(r.id);
  std::optional<FourSpace> widest;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 1; i <= 3; ++i) {
    auto [m, n] = extra_periods(cfg, i);
    std::optional<FourSpace> Y;
    try {
      Y.emplace(cfg.s4ab_alpha, cfg.s4ab_beta, m, n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.log.skip("A_" + std::to_string(i) + " with m = " + m.back().str() + ": " + e.what());
      break;
    }
    const auto& A = Y->extra_set(i);
    auto a = BlockVector::indicator(A);
    nlohmann::json replay = {{"i", i}, {"m_seq", detail::join(m)}, {"n_seq", detail::join(n)}};
    r.log.expect_eq(Y->seminorm_beta(a), Real(A.min()), "extra seminorm of 1_A_i differs from min A_i", replay);
    r.log.expect_le(Real(A.min()), Y->norm(a).value, "|1_A_i| below min A_i", replay);
    // as many points at the start of F_(n_i), a member of S_a
    auto F = Y->f_block(detail::to_index(n.back(), "n"));
    auto B = F.slice(0, A.size());
    Real vb = Y->norm(BlockVector::indicator(B)).value;
    r.log.expect_le(vb, Real(6), "|1_B_i| above 6", replay);
    rows.push_back({{"i", i}, {"min_A", A.min().str()}, {"b_norm", decimal(vb, 12)},
                    {"ratio", decimal(Real(A.min()) / vb, 12)}});
    widest = std::move(Y);
  }
  r.notes["witnesses"] = rows;
  if (!widest) return;
  // S_b sets beyond N lie in S_a; for b < a finite, N = 0
  const auto& beta = cfg.s4ab_beta;
  if (!(beta.is_finite() && cfg.s4ab_alpha.is_finite() && beta < cfg.s4ab_alpha)) {
    r.log.skip("threshold N of the inclusion is only known for finite b < a");
    return;
  }
  for (std::size_t t = 0; t < cfg.scan_trials; ++t) {
    auto A = random_member(rng, beta, 12);
    auto v = widest->norm(BlockVector::indicator(A));
    r.log.expect_le(v.value, Real(6), "member of S_b above N + 6", replay_set(A));
  }
}

inline void extra_uncond(VerifyContext& ctx, SuiteResult& r) {
  const auto& cfg = ctx.config();
  FourSpace Y(cfg.s4ab_alpha, cfg.s4ab_beta, cfg.s4ab_m, cfg.s4ab_n);
  for (const auto& n : Y.n_seq()) {
    auto N = detail::to_index(n, "n");
    try {
      auto x = Y.xy_block(N, true), y = Y.xy_block(N, false);
      nlohmann::json replay = {{"n", n.str()}};
      r.log.expect(Y.seminorm_beta(x) == 0 && Y.seminorm_beta(y) == 0, "witness meets an extra set", replay);
      r.log.expect_le(harmonic(N), Y.norm(y).value, "|y| below H_n", replay);
      r.log.expect_lt(Y.seminorm2(x), Real(3), "alternating partial sums not below 3", replay);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.log.skip("blocks F_" + n.str() + ".. F_" + Int(2 * n - 1).str() + " exceed the digit budget: " + e.what());
    }
  }
}

}  // namespace suites

/// Every suite, in run order. The invariant audit comes last so that it
/// sees the averages built by the others.
inline const std::vector<SuiteSpec>& suite_registry() {
  static const std::vector<SuiteSpec> r = {
      {"schreier-oracle", "membership agrees with the recursive definition on all subsets of [1,12]",
       suites::schreier_oracle},
      {"block-sum", "an S_a set meets consecutive block averages with total mass at most 6", suites::block_sum_bound},
      {"theta-quartic", "theta_(a,m)(x) <= x^(1/4) for m = 10^5", suites::theta_quartic},
      {"theta-ratio", "theta_(a,m)(x)^2 / x strictly decreases for m = 10^5", suites::theta_ratio},
      {"gauge-properties", "the gauge satisfies properties a)-f)", suites::gauge_properties},
      {"gauge-chain", "the sequences interleave with the partition starts", suites::gauge_chain},
      {"packing-bound", "t_a(E) <= m for E in S_(a+1) with m the least start of a same-size interval",
       suites::packing_bound},
      {"half-size-start", "the least start for half the size is at least half the least start",
       suites::half_size_start},
      {"first-upper", "|1_E|_1 <= 6 phi(m+1)", suites::first_upper},
      {"first-lower", "|1_E|_1 >= phi(m+1)/6", suites::first_lower},
      {"second-upper", "|1_E|_2 <= 6 phi(m+1) for E in S_(a+1)", suites::second_upper},
      {"third-fourth-upper", "|1_E|_3 <= sqrt(6) phi(m+1) and |1_E|_4 <= 6 phi(m+1)", suites::third_fourth_upper},
      {"democracy-constant", "|1_A| <= 36 |1_B| for A in S_(a+1) and |A| <= |B|", suites::democracy_constant},
      {"democracy-divergence", "the long S_(a+2) interval beats every same-size S_(a+1) set",
       suites::democracy_divergence},
      {"uncond-projection", "projections onto S_a sets are bounded", suites::uncond_projection},
      {"uncond-sum-bound", "phi(q)/q sum_(i<=q) 1/phi(i) <= ln^(1/4) m + 3 for q <= m in M_1",
       suites::uncond_sum_bound},
      {"uncond-divergence", "the weighted block witnesses separate x from its alternating twin",
       suites::uncond_divergence},
      {"qg-thresholded-partial", "thresholded partial-sum terms stay below 3", suites::qg_three},
      {"block-democracy", "|1_E_N| = sum j^(-1/2) while same-size S_a sets stay below 6", suites::block_democracy},
      {"block-uncond", "|y_N|/|x_N| grows while the alternating partial sums stay below 3", suites::block_uncond},
      {"qg-thresholded-blocks", "thresholded block partial sums stay below 3 + sqrt(2)", suites::qg_four},
      {"extra-democracy", "|1_A_i| >= min A_i while S_b sets stay below N + 6", suites::extra_democracy},
      {"extra-uncond", "the block witnesses avoid the extra sets and keep diverging", suites::extra_uncond},
      {"average-invariants", "every average built in the run has unit mass, monotone weights and the right support",
       suites::average_invariants},
  };
  return r;
}

inline const SuiteSpec& find_suite(const std::string& id) {
  for (const auto& s : suite_registry())
    if (s.id == id) return s;
  throw Error(ErrorKind::UnknownSuite, "unknown suite '" + id + "'");
}

/// Runs one suite. A budget overrun ends the suite with a skip; any other
/// library error is recorded as a failure.
inline SuiteResult run_suite(const std::string& id, VerifyContext& ctx) {
  const auto& spec = find_suite(id);
  SuiteResult r{spec.id, spec.claim};
  Limits l = limits();
  l.precision_bits = ctx.config().precision_bits;
  l.digit_cap = ctx.config().digit_cap;
  LimitsScope scope(l);
  auto t0 = std::chrono::steady_clock::now();
  try {
    spec.run(ctx, r);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) r.log.skip(std::string("budget: ") + e.what());
    else r.log.expect(false, std::string(to_string(e.kind())) + ": " + e.what());
  }
  if (ctx.config().timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<SuiteResult> run_suites(const std::vector<std::string>& ids, VerifyContext& ctx) {
  std::vector<SuiteResult> out;
  for (const auto& id : ids) out.push_back(run_suite(id, ctx));
  return out;
}

inline std::vector<std::string> all_suite_ids() {
  std::vector<std::string> ids;
  for (const auto& s : suite_registry()) ids.push_back(s.id);
  return ids;
}

inline nlohmann::json results_json(const RunConfig& cfg, const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  std::map<std::string, int> tally;
  for (const auto& r : results) {
    suites.push_back(r.to_json());
    ++tally[r.status()];
  }
  return {{"config", cfg.to_json()}, {"suites", suites}, {"summary", tally}};
}

inline bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.log.ok(); });
}

}  // namespace schreierlab
