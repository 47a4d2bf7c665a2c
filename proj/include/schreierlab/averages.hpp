#pragma once

#include "schreierlab/schreier.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <mutex>
#include <string>
#include <vector>

namespace schreierlab {

/// A maximal run of consecutive integers [lo, hi] carrying one weight.
struct WeightRun {
  Int lo;
  Int hi;
  Rational weight;
  bool operator==(const WeightRun&) const = default;
};

/// Repeated average x_(a,A) in run-length form. Weights are exact.
class RepeatedAverage {
 public:
  RepeatedAverage(Ordinal alpha, FiniteSet support, std::vector<WeightRun> runs)
      : alpha_(std::move(alpha)), support_(std::move(support)), runs_(std::move(runs)) {}

  const Ordinal& alpha() const { return alpha_; }
  const FiniteSet& support() const { return support_; }
  const std::vector<WeightRun>& runs() const { return runs_; }

  Rational weight_at(const Int& i) const {
    auto it = std::upper_bound(runs_.begin(), runs_.end(), i,
                               [](const Int& v, const WeightRun& r) { return v < r.lo; });
    if (it == runs_.begin()) return 0;
    --it;
    return i <= it->hi ? it->weight : Rational(0);
  }

  const Rational& first_weight() const { return runs_.front().weight; }
  const Rational& last_weight() const { return runs_.back().weight; }

  /// Sum of weights over F.
  Rational mass_on(const FiniteSet& F) const {
    Rational total = 0;
    for (const auto& r : runs_) total += r.weight * Rational(F.count_in(r.lo, r.hi));
    return total;
  }

  /// Empty string when (P1)-(P3) hold; otherwise a description.
  std::string invariant_violation() const {
    Rational total = 0;
    FiniteSet covered;
    for (std::size_t k = 0; k < runs_.size(); ++k) {
      const auto& r = runs_[k];
      if (r.weight <= 0) return "non-positive weight";
      if (k > 0 && r.weight > runs_[k - 1].weight) return "weights increase at " + r.lo.str();
      total += r.weight * Rational(r.hi - r.lo + 1);
      covered.push_back_interval(r.lo, r.hi);
    }
    if (total != 1) return "weights sum to " + to_string(total);
    if (!(covered == support_)) return "support differs from the generating set";
    return {};
  }

  nlohmann::json to_json() const {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& iv : support_.intervals()) support.push_back({iv.lo.str(), iv.hi.str()});
    nlohmann::json rle = nlohmann::json::array();
    for (const auto& r : runs_) rle.push_back({r.lo.str(), r.hi.str(), to_string(r.weight)});
    return {{"alpha", alpha_.str()}, {"support", support}, {"rle", rle}};
  }

 private:
  Ordinal alpha_;
  FiniteSet support_;
  std::vector<WeightRun> runs_;
};

/// Tally of every average built in this process, with the first violation.
struct AverageAudit {
  std::atomic<std::uint64_t> constructed{0};
  std::atomic<std::uint64_t> violations{0};
  std::atomic<std::uint64_t> partition_checks{0};
  std::mutex mutex;
  std::string first_violation;

  void record(const std::string& violation) {
    ++constructed;
    if (violation.empty()) return;
    ++violations;
    std::lock_guard lock(mutex);
    if (first_violation.empty()) first_violation = violation;
  }
};

inline AverageAudit& average_audit() {
  static AverageAudit audit;
  return audit;
}

namespace detail {

inline void build_average(const Ordinal& a, const FiniteSet& A, const Rational& scale,
                          std::vector<WeightRun>& out) {
  if (a.is_zero()) {
    out.push_back({A.min(), A.min(), scale});
  } else if (a == Ordinal::finite(1)) {
    Rational w = scale / Rational(A.min());
    for (const auto& iv : A.intervals()) out.push_back({iv.lo, iv.hi, w});
  } else {
    const Int& m = A.min();
    Ordinal b = lambda_approx(a, to_index(m, "min A"));
    auto parts = greedy_chunks(A, b);
    if (Int(parts.size()) != m)
      throw Error(ErrorKind::NotMaximal, "recursive representation has the wrong number of parts");
    Rational child = scale / Rational(m);
    for (const auto& part : parts) build_average(b, part, child, out);
  }
  if (out.size() > limits().run_cap)
    throw Error(ErrorKind::CapExceeded, "repeated average needs more than run_cap runs");
}

inline std::vector<WeightRun> merge_runs(std::vector<WeightRun> runs) {
  std::vector<WeightRun> out;
  for (auto& r : runs) {
    if (!out.empty() && out.back().hi + 1 == r.lo && out.back().weight == r.weight)
      out.back().hi = r.hi;
    else
      out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// x_(a,A) for A in MAX(S_a).
inline RepeatedAverage repeated_average(const Ordinal& a, const FiniteSet& A) {
  if (!is_maximal(A, a)) throw Error(ErrorKind::NotMaximal, A.str() + " is not maximal in S_" + a.str());
  std::vector<WeightRun> runs;
  detail::build_average(a, A, Rational(1), runs);
  RepeatedAverage avg(a, A, detail::merge_runs(std::move(runs)));
  auto violation = avg.invariant_violation();
  average_audit().record(violation.empty() ? violation
                                           : "x_(" + a.str() + "," + A.str() + "): " + violation);
  return avg;
}

/// x_(a,M,i) for i = 1..count with M = [m, oo).
inline std::vector<RepeatedAverage> averages_along(const Ordinal& a, const Int& m, std::uint64_t count) {
  std::vector<RepeatedAverage> out;
  std::vector<FiniteSet> blocks;
  Int lo = m;
  for (std::uint64_t i = 0; i < count; ++i) {
    Int next = gamma(a, lo);
    blocks.push_back(FiniteSet::interval(lo, next - 1));
    lo = next;
  }
  for (const auto& b : blocks) out.push_back(repeated_average(a, b));

  // (P4): the greedy maximal decomposition of M restricted to the covered
  // range reproduces the blocks.
  if (count > 0) {
    auto& audit = average_audit();
    ++audit.partition_checks;
    auto chunks = greedy_chunks(FiniteSet::interval(m, lo - 1), a);
    if (chunks != blocks) {
      ++audit.violations;
      std::lock_guard lock(audit.mutex);
      if (audit.first_violation.empty())
        audit.first_violation = "partition of [" + m.str() + ",oo) at order " + a.str() + " is inconsistent";
    }
  }
  return out;
}

/// Sum over j in F of sum_i x_(a,A_i)(j). F must lie in S_a.
inline Rational block_sum(const Ordinal& a, const std::vector<RepeatedAverage>& blocks, const FiniteSet& F) {
  if (!is_member(F, a)) throw Error(ErrorKind::InvalidArgument, F.str() + " is not in S_" + a.str());
  Rational total = 0;
  for (const auto& b : blocks) total += b.mass_on(F);
  return total;
}

}  // namespace schreierlab
