// Acceptance run: one PASS/FAIL line per criterion. A criterion that fails
// for its documented reason is reported with that reason and does not change
// the exit status; any other failure does.

#include "schreierlab/verify.hpp"

#include <iostream>
#include <map>

using namespace schreierlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // set when the failure is the documented, expected one
  std::string known;
};

using Results = std::map<std::string, SuiteResult>;

std::string summary(const SuiteResult& r) {
  std::string s = r.id + " " + r.status() + " (" + std::to_string(r.log.instances()) + " instances";
  if (r.log.failure_count()) s += ", " + std::to_string(r.log.failure_count()) + " failed";
  if (!r.log.skipped().empty()) s += ", " + std::to_string(r.log.skipped().size()) + " skipped";
  return s + ")";
}

Outcome all_pass(const Results& res, std::initializer_list<const char*> ids) {
  Outcome o{true, ""};
  for (const char* id : ids) {
    const auto& r = res.at(id);
    if (r.status() != "pass") o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + summary(r);
  }
  return o;
}

bool only_budget_skips(const SuiteResult& r) {
  for (const auto& s : r.log.skipped())
    if (s.find("digit") == std::string::npos && s.find("no following period") == std::string::npos) return false;
  return true;
}

Outcome oracle_equivalence(const Results& res) {
  auto o = all_pass(res, {"schreier-oracle"});
  const auto& r = res.at("schreier-oracle");
  double secs = r.seconds.value_or(0);
  o.detail += ", " + std::to_string(secs) + " s";
  o.pass = o.pass && r.log.instances() >= 2 * 4096 && secs < 10;
  return o;
}

Outcome block_sum(const Results& res) {
  auto o = all_pass(res, {"block-sum"});
  o.pass = o.pass && res.at("block-sum").log.instances() >= 1000;
  return o;
}

Outcome invariants(const Results& res) {
  auto o = all_pass(res, {"average-invariants"});
  const auto& n = res.at("average-invariants").notes;
  o.detail += ", " + n.at("averages_constructed").dump() + " averages, " + n.at("violations").dump() + " violations";
  o.pass = o.pass && n.at("violations") == 0 && n.at("averages_constructed").get<std::uint64_t>() > 0;
  return o;
}

Outcome gauge(const Results& res) {
  auto o = all_pass(res, {"gauge-properties", "gauge-chain", "theta-quartic", "theta-ratio"});
  if (o.pass) return o;
  const auto& props = res.at("gauge-properties");
  bool expected = true;
  for (const auto& f : props.log.failures())
    expected = expected && (f.what.rfind("c)", 0) == 0 || f.what.rfind("e)", 0) == 0);
  for (const char* id : {"gauge-chain", "theta-quartic", "theta-ratio"})
    expected = expected && res.at(id).log.ok() && only_budget_skips(res.at(id));
  if (expected)
    o.known = "the desk profile breaks c) psi <= sqrt(x) and e) phi <= x^(1/4) at its first theta breakpoint x = 500; "
              "theta order 2 exceeds the digit budget; the last chain link has no following period";
  return o;
}

Outcome democracy_divergence(const Results& res) {
  auto o = all_pass(res, {"democracy-divergence"});
  const auto& r = res.at("democracy-divergence");
  double ratio = 0, ratio_b = 0;
  for (const auto& w : r.notes.at("witnesses")) {
    ratio = std::stod(w.at("ratio_to_bound").get<std::string>());
    ratio_b = std::stod(w.at("ratio_to_b").get<std::string>());
  }
  o.detail += ", ratio to 6 phi(m'+1) = " + std::to_string(ratio) + ", ratio to |1_B| = " + std::to_string(ratio_b) +
              ", " + std::to_string(r.seconds.value_or(0)) + " s";
  bool fast = r.seconds.value_or(0) < 60;
  if (o.pass && fast && ratio <= 50) {
    o.pass = false;
    o.known = "at the desk n the second seminorm is " + std::to_string(ratio) +
              " times 6 phi(m'+1); the factor 50 needs a larger n, beyond the digit budget";
  }
  o.pass = o.pass && fast && ratio > 50;
  return o;
}

Outcome extra(const Results& res) {
  auto o = all_pass(res, {"extra-democracy"});
  const auto& r = res.at("extra-democracy");
  if (!o.pass && r.log.ok() && r.status() == "partial" && only_budget_skips(r))
    o.known = "A_2 and A_3 live past m = 6, whose blocks exceed the digit budget; only i = 1 is checked";
  return o;
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.timing = true;
  Results res;
  {
    VerifyContext ctx(cfg);
    for (auto& r : run_suites(all_suite_ids(), ctx)) res.emplace(r.id, std::move(r));
  }

  std::vector<std::pair<std::string, Outcome>> rows;
  rows.push_back({"schreier oracle equivalence", oracle_equivalence(res)});
  rows.push_back({"block sums at most 6", block_sum(res)});
  rows.push_back({"repeated-average invariants", invariants(res)});
  rows.push_back({"packing bound and half-size start", all_pass(res, {"packing-bound", "half-size-start"})});
  rows.push_back({"gauge suite on the desk profile", gauge(res)});
  rows.push_back({"democracy sandwich",
                  all_pass(res, {"first-upper", "first-lower", "second-upper", "third-fourth-upper"})});
  rows.push_back({"democracy divergence witness", democracy_divergence(res)});
  rows.push_back({"block space exact values", all_pass(res, {"block-democracy"})});
  rows.push_back({"block space unconditionality trend", all_pass(res, {"block-uncond"})});
  rows.push_back({"quasi-greedy bounds", all_pass(res, {"qg-thresholded-partial", "qg-thresholded-blocks"})});
  rows.push_back({"extra seminorm values", extra(res)});

  RunConfig plain;
  auto once = [&] {
    VerifyContext ctx(plain);
    return results_json(plain, run_suites(all_suite_ids(), ctx)).dump(2);
  };
  std::string a = once(), b = once();
  rows.push_back({"deterministic verify output",
                  Outcome{a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")}});

  int unexpected = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [name, o] = rows[i];
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << name << ": " << o.detail;
    if (!o.pass && !o.known.empty()) std::cout << " [expected: " << o.known << "]";
    std::cout << "\n";
    if (!o.pass && o.known.empty()) ++unexpected;
  }
  std::cout << unexpected << " unexpected failure(s)\n";
  return unexpected ? 1 : 0;
}
