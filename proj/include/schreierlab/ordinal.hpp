#pragma once

#include "schreierlab/numeric.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace schreierlab {

/// Ordinal below w^w in Cantor normal form: sum of w^exponent * coefficient
/// with strictly decreasing exponents and positive coefficients. The empty
/// term list is 0.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    bool operator==(const Term&) const = default;
  };

  Ordinal() = default;

  explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].coefficient == 0)
        throw Error(ErrorKind::InvalidArgument, "ordinal coefficient must be positive");
      if (i > 0 && terms_[i].exponent >= terms_[i - 1].exponent)
        throw Error(ErrorKind::InvalidArgument, "ordinal exponents must strictly decrease");
    }
  }

  static Ordinal finite(std::uint64_t n) { return n == 0 ? Ordinal() : Ordinal({{0, n}}); }
  static Ordinal omega_power(std::uint32_t k, std::uint64_t c = 1) { return Ordinal({{k, c}}); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || terms_.front().exponent == 0; }
  std::uint64_t finite_value() const { return terms_.empty() ? 0 : terms_.front().coefficient; }

  bool operator==(const Ordinal&) const = default;

  std::strong_ordering operator<=>(const Ordinal& o) const {
    std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = terms_[i];
      const auto& b = o.terms_[i];
      if (a.exponent != b.exponent) return a.exponent <=> b.exponent;
      if (a.coefficient != b.coefficient) return a.coefficient <=> b.coefficient;
    }
    return terms_.size() <=> o.terms_.size();
  }

  Ordinal successor() const {
    auto t = terms_;
    if (!t.empty() && t.back().exponent == 0)
      ++t.back().coefficient;
    else
      t.push_back({0, 1});
    return Ordinal(std::move(t));
  }

  /// this + w^k * c, absorbing every term below w^k.
  Ordinal plus_omega_power(std::uint32_t k, std::uint64_t c) const {
    std::vector<Term> t;
    for (const auto& term : terms_) {
      if (term.exponent > k) t.push_back(term);
      else if (term.exponent == k) { t.push_back({k, term.coefficient + c}); c = 0; break; }
      else break;
    }
    if (c > 0) t.push_back({k, c});
    return Ordinal(std::move(t));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += '+';
      if (t.exponent == 0) {
        out += std::to_string(t.coefficient);
        continue;
      }
      out += 'w';
      if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
      if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
    }
    return out;
  }

  /// Parses `w^2*3+w*1+4`, `w`, `7`, `0`. Terms must appear in strictly
  /// decreasing exponent order.
  static Ordinal parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ') s += ch;
    if (s.empty()) throw Error(ErrorKind::Parse, "empty ordinal");
    if (s == "0") return Ordinal();
    std::vector<Term> terms;
    std::size_t pos = 0;
    auto read_number = [&](const char* what) -> std::uint64_t {
      std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (start == pos) throw Error(ErrorKind::Parse, std::string("expected ") + what + " in '" + s + "'");
      if (pos - start > 18) throw Error(ErrorKind::Parse, "number too large in '" + s + "'");
      return std::stoull(s.substr(start, pos - start));
    };
    while (pos < s.size()) {
      Term term{0, 1};
      if (s[pos] == 'w') {
        ++pos;
        term.exponent = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          term.exponent = static_cast<std::uint32_t>(read_number("exponent"));
        }
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
          term.coefficient = read_number("coefficient");
        }
      } else {
        term.coefficient = read_number("natural");
      }
      if (term.coefficient == 0 && term.exponent == 0 && terms.empty() && pos == s.size())
        return Ordinal();
      if (term.coefficient == 0) throw Error(ErrorKind::Parse, "zero coefficient in '" + s + "'");
      if (!terms.empty() && term.exponent >= terms.back().exponent)
        throw Error(ErrorKind::Parse, "terms not in Cantor normal form in '" + s + "'");
      terms.push_back(term);
      if (pos < s.size()) {
        if (s[pos] != '+') throw Error(ErrorKind::Parse, "unexpected character in '" + s + "'");
        ++pos;
        if (pos == s.size()) throw Error(ErrorKind::Parse, "trailing '+' in '" + s + "'");
      }
    }
    return Ordinal(std::move(terms));
  }

 private:
  std::vector<Term> terms_;
};

enum class Cmp { Less, Equal, Greater };

inline Cmp cmp(const Ordinal& a, const Ordinal& b) {
  auto c = a <=> b;
  if (c < 0) return Cmp::Less;
  if (c > 0) return Cmp::Greater;
  return Cmp::Equal;
}

enum class OrdinalKind { Zero, Successor, Limit };

struct Classification {
  OrdinalKind kind;
  std::optional<Ordinal> pred;  // set iff kind == Successor
};

inline Classification classify(const Ordinal& a) {
  if (a.is_zero()) return {OrdinalKind::Zero, std::nullopt};
  const auto& terms = a.terms();
  if (terms.back().exponent != 0) return {OrdinalKind::Limit, std::nullopt};
  auto t = terms;
  if (--t.back().coefficient == 0) t.pop_back();
  return {OrdinalKind::Successor, Ordinal(std::move(t))};
}

/// Fixed approximating sequence. Successor b+1 maps to b for every i.
/// A limit written b + w^k (last exponent k >= 1) maps to b + i when k = 1
/// and to b + w^(k-1) * i + 1 when k >= 2.
inline Ordinal lambda_approx(const Ordinal& a, std::uint64_t i) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "lambda_approx is undefined at 0");
  if (i == 0) throw Error(ErrorKind::InvalidArgument, "lambda_approx index must be positive");
  auto c = classify(a);
  if (c.kind == OrdinalKind::Successor) return *c.pred;
  auto t = a.terms();
  std::uint32_t k = t.back().exponent;
  if (--t.back().coefficient == 0) t.pop_back();
  Ordinal base(std::move(t));
  if (k == 1) return base.plus_omega_power(0, i);
  return base.plus_omega_power(k - 1, i).successor();
}

}  // namespace schreierlab
