#pragma once

// Numeric vocabulary shared by every module: arbitrary-precision integers,
// exact rationals, runtime-precision reals, the error type, and the
// magnitude/search limits that separate desk-scale from full-scale work.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schreierlab {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

enum class ErrorKind {
  InvalidArgument,
  BudgetExceeded,
  CapExceeded,
  NotMaximal,
  InvalidSequence,
  OutOfWindow,
  UnknownSuite,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::InvalidSequence: return "InvalidSequence";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process-wide knobs. Each thread sees its own copy; use LimitsScope to
// override temporarily.
struct Limits {
  unsigned digit_cap = 2000;        // decimal digits allowed in any big integer
  unsigned precision_bits = 256;    // binary precision of Real
  std::size_t tpack_cap = 14;       // |E| bound for the exact packing search
  std::size_t norm_search_cap = 12; // |supp| bound for exact sup-norm search
  std::size_t norm_index_cap = 64;  // max support index for exact sup-norm search (alpha >= 1)
  std::size_t run_cap = 1u << 20;   // max runs in a run-length repeated average
  std::size_t depth_cap = 4096;     // recursion depth for membership
};

inline Limits& limits() {
  thread_local Limits l;
  return l;
}

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

inline void apply_precision(unsigned bits) {
  limits().precision_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

namespace detail {
inline const bool precision_initialised = (apply_precision(limits().precision_bits), true);
}

class LimitsScope {
 public:
  explicit LimitsScope(const Limits& l) : saved_(limits()) {
    limits() = l;
    apply_precision(l.precision_bits);
  }
  ~LimitsScope() {
    limits() = saved_;
    apply_precision(saved_.precision_bits);
  }
  LimitsScope(const LimitsScope&) = delete;
  LimitsScope& operator=(const LimitsScope&) = delete;

 private:
  Limits saved_;
};

inline std::size_t bit_length(const Int& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

inline std::size_t digit_cap_bits() {
  return static_cast<std::size_t>(limits().digit_cap * 3.3219280948873623) + 1;
}

inline bool exceeds_budget(const Int& v) { return bit_length(v) > digit_cap_bits(); }

inline void check_budget(const Int& v, std::string_view what) {
  if (exceeds_budget(v))
    throw Error(ErrorKind::BudgetExceeded,
                std::string(what) + " exceeds the digit cap of " + std::to_string(limits().digit_cap));
}

inline Int parse_int(std::string_view s) {
  if (s.empty()) throw Error(ErrorKind::Parse, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(ErrorKind::Parse, "bad integer '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw Error(ErrorKind::Parse, "bad integer '" + std::string(s) + "'");
  return Int(std::string(s[0] == '+' ? s.substr(1) : s));
}

inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  return Rational(num, den);
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline Real to_real(const Int& v) { return Real(v); }
inline Real ln(const Real& x) { return boost::multiprecision::log(x); }
inline Real ln(const Int& v) { return boost::multiprecision::log(Real(v)); }
inline Real to_real(const Rational& q) { return Real(q); }

// Exact rational value of a Real (mpfr values are dyadic).
inline Rational to_rational(const Real& x) { return Rational(x); }

inline std::string hexfloat(const Real& x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", x.backend().data());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

inline Real parse_hexfloat(const std::string& s) {
  Real r;
  if (mpfr_set_str(r.backend().data(), s.c_str(), 0, MPFR_RNDN) != 0)
    throw Error(ErrorKind::Parse, "bad real '" + s + "'");
  return r;
}

inline std::string decimal(const Real& x, int digits = 17) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// Rounding envelope for a comparison at the current precision: a relative
// slack of 2^(-bits+24) on the larger magnitude, never below that absolute.
inline Real envelope(const Real& a, const Real& b) {
  Real scale = boost::multiprecision::max(Real(1), boost::multiprecision::max(abs(a), abs(b)));
  Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(limits().precision_bits) + 24);
  return scale * eps;
}

inline bool le_within(const Real& a, const Real& b) { return a <= b + envelope(a, b); }
inline bool eq_within(const Real& a, const Real& b) { return abs(a - b) <= envelope(a, b); }

enum class Verdict { Pass, Fail, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

// Three-valued a <= b: Pass with margin, Fail with margin, otherwise
// Indeterminate (inside the rounding envelope).
inline Verdict certified_le(const Real& a, const Real& b) {
  Real env = envelope(a, b);
  if (a <= b - env) return Verdict::Pass;
  if (a > b + env) return Verdict::Fail;
  return Verdict::Indeterminate;
}

}  // namespace schreierlab
