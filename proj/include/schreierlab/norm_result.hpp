#pragma once

#include "schreierlab/numeric.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace schreierlab {

enum class Certificate { Exact, LowerBound };

inline const char* to_string(Certificate c) { return c == Certificate::Exact ? "exact" : "lower_bound"; }

/// A seminorm or norm value. For LowerBound certificates the true value lies
/// in [value, upper]; for Exact ones upper == value.
struct NormValue {
  Real value = 0;
  Certificate certificate = Certificate::Exact;
  Real upper = 0;
  std::string component;

  static NormValue exact(Real v, std::string component = {}) {
    NormValue out;
    out.value = v;
    out.upper = std::move(v);
    out.component = std::move(component);
    return out;
  }

  static NormValue bracket(Real lo, Real hi, std::string component = {}) {
    NormValue out;
    out.value = std::move(lo);
    out.upper = std::move(hi);
    out.certificate = Certificate::LowerBound;
    out.component = std::move(component);
    return out;
  }

  bool is_exact() const { return certificate == Certificate::Exact; }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"value", decimal(value, 20)}, {"certificate", to_string(certificate)}};
    if (!is_exact()) j["upper"] = decimal(upper, 20);
    if (!component.empty()) j["argmax_component"] = component;
    return j;
  }
};

/// Maximum of component values; the result is exact only if every part is.
inline NormValue max_of(const std::vector<NormValue>& parts) {
  NormValue out = NormValue::exact(Real(0));
  bool first = true;
  for (const auto& p : parts) {
    if (first || p.value > out.value) {
      out.value = p.value;
      out.component = p.component;
    }
    if (first || p.upper > out.upper) out.upper = p.upper;
    if (!p.is_exact()) out.certificate = Certificate::LowerBound;
    first = false;
  }
  if (out.is_exact()) out.upper = out.value;
  return out;
}

}  // namespace schreierlab
