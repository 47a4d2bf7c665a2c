#pragma once

#include "schreierlab/numeric.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace schreierlab {

struct CheckFailure {
  std::string what;
  nlohmann::json replay;
};

/// Accumulates instance checks: counts, failures with replay data, and
/// skipped sub-checks with their reasons.
class CheckLog {
 public:
  void expect(bool ok, const std::string& what, nlohmann::json replay = nlohmann::json::object()) {
    ++instances_;
    if (!ok) fail(what, std::move(replay));
  }

  /// a <= b up to the rounding envelope.
  void expect_le(const Real& a, const Real& b, const std::string& what,
                 nlohmann::json replay = nlohmann::json::object()) {
    ++instances_;
    if (!le_within(a, b)) fail(what + " (" + decimal(a) + " > " + decimal(b) + ")", std::move(replay));
  }

  /// a < b with margin beyond the rounding envelope; inside the envelope
  /// counts as a failure.
  void expect_lt(const Real& a, const Real& b, const std::string& what,
                 nlohmann::json replay = nlohmann::json::object()) {
    ++instances_;
    auto v = certified_le(a, b);
    if (v == Verdict::Indeterminate) ++indeterminate_;
    if (v != Verdict::Pass || a == b)
      fail(what + " (" + decimal(a) + " vs " + decimal(b) + ", " + to_string(v) + ")", std::move(replay));
  }

  void expect_eq(const Real& a, const Real& b, const std::string& what,
                 nlohmann::json replay = nlohmann::json::object()) {
    ++instances_;
    if (!eq_within(a, b)) fail(what + " (" + decimal(a) + " != " + decimal(b) + ")", std::move(replay));
  }

  /// value <= bound for a value known to lie in [lo, hi]. A bracket that
  /// straddles the bound is indeterminate and counts as a failure.
  void expect_bracket_le(const Real& lo, const Real& hi, const Real& bound, const std::string& what,
                         nlohmann::json replay = nlohmann::json::object()) {
    if (le_within(hi, bound)) return record(Verdict::Pass, what, std::move(replay));
    bool fails = lo > bound + envelope(lo, bound);
    record(fails ? Verdict::Fail : Verdict::Indeterminate,
           what + " (" + decimal(lo) + ".." + decimal(hi) + " vs " + decimal(bound) + ")", std::move(replay));
  }

  void record(Verdict v, const std::string& what, nlohmann::json replay = nlohmann::json::object()) {
    ++instances_;
    if (v == Verdict::Indeterminate) ++indeterminate_;
    if (v != Verdict::Pass) fail(what + (v == Verdict::Indeterminate ? " [indeterminate]" : ""), std::move(replay));
  }

  void skip(const std::string& reason) { skipped_.push_back(reason); }

  void merge(const CheckLog& other) {
    instances_ += other.instances_;
    indeterminate_ += other.indeterminate_;
    failure_count_ += other.failure_count_;
    failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
    skipped_.insert(skipped_.end(), other.skipped_.begin(), other.skipped_.end());
  }

  bool ok() const { return failure_count_ == 0; }
  std::uint64_t failure_count() const { return failure_count_; }
  std::uint64_t instances() const { return instances_; }
  std::uint64_t indeterminate() const { return indeterminate_; }
  const std::vector<CheckFailure>& failures() const { return failures_; }
  const std::vector<std::string>& skipped() const { return skipped_; }

 private:
  void fail(std::string what, nlohmann::json replay) {
    // keep the log bounded; the count stays exact
    ++failure_count_;
    if (failures_.size() < kKeep) failures_.push_back({std::move(what), std::move(replay)});
  }

  static constexpr std::size_t kKeep = 50;
  std::uint64_t instances_ = 0;
  std::uint64_t indeterminate_ = 0;
  std::uint64_t failure_count_ = 0;
  std::vector<CheckFailure> failures_;
  std::vector<std::string> skipped_;
};

}  // namespace schreierlab
