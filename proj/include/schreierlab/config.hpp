#pragma once

#include "schreierlab/gauge.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace schreierlab {

/// Settings for the verify suites and the scanners. The text form is one
/// `key = value` per line; `#` starts a comment and values may be quoted.
/// Integers are decimal strings, sequences are comma lists.
struct RunConfig {
  std::uint64_t seed = 1;
  unsigned precision_bits = 256;
  unsigned digit_cap = 2000;
  bool timing = false;

  // section three space
  std::optional<std::string> profile_path;
  GaugeParams gauge = desk_params();
  std::size_t support_cap = 12;
  std::size_t index_cap = 64;

  // section four spaces
  Ordinal s4_alpha = Ordinal::finite(1);
  Ordinal s4ab_alpha = Ordinal::finite(2);
  Ordinal s4ab_beta = Ordinal::finite(0);
  std::vector<Int> s4ab_m = {Int(2)};
  std::vector<Int> s4ab_n = {Int(3)};

  // instance counts
  std::size_t block_sum_instances = 500;
  std::size_t sandwich_instances = 60;
  std::size_t qg_trials = 200;
  std::size_t scan_trials = 100;
  unsigned oracle_universe = 12;
  std::uint64_t half_start_max = 64;
  unsigned theta_imax = 60;
  Int theta_m = Int(100000);

  static RunConfig parse(std::istream& is);
  static RunConfig load(const std::string& path);
  void set(const std::string& key, const std::string& value);
  nlohmann::json to_json() const;

  static const std::vector<std::string>& keys();
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item)));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty integer list");
  return out;
}

inline std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out;
}

template <class T>
T parse_unsigned(const std::string& key, const std::string& value) {
  Int v = parse_int(value);
  if (v < 0 || v > Int(std::numeric_limits<T>::max()))
    throw Error(ErrorKind::Parse, "value of '" + key + "' is out of range");
  return static_cast<T>(v);
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error(ErrorKind::Parse, "value of '" + key + "' must be true or false");
}

}  // namespace detail

inline const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = {
      "seed",          "precision_bits", "digit_cap",         "timing",       "profile",
      "gauge.alpha",   "gauge.m_seq",    "gauge.n_seq",       "gauge.window_max",
      "support_cap",   "index_cap",      "s4.alpha",          "s4ab.alpha",   "s4ab.beta",
      "s4ab.m_seq",    "s4ab.n_seq",     "block_sum.instances", "sandwich.instances",
      "qg.trials",     "scan.trials",    "oracle.universe",   "half_start.max",      "theta.imax",
      "theta.m"};
  return k;
}

inline void RunConfig::set(const std::string& key, const std::string& value) {
  using detail::parse_unsigned;
  if (key == "seed") seed = parse_unsigned<std::uint64_t>(key, value);
  else if (key == "precision_bits") precision_bits = parse_unsigned<unsigned>(key, value);
  else if (key == "digit_cap") digit_cap = parse_unsigned<unsigned>(key, value);
  else if (key == "timing") timing = detail::parse_bool(key, value);
  else if (key == "profile") profile_path = value;
  else if (key == "gauge.alpha") gauge.alpha = Ordinal::parse(value);
  else if (key == "gauge.m_seq") gauge.m_seq = detail::parse_int_list(value);
  else if (key == "gauge.n_seq") gauge.n_seq = detail::parse_int_list(value);
  else if (key == "gauge.window_max") gauge.window_max = parse_int(value);
  else if (key == "support_cap") support_cap = parse_unsigned<std::size_t>(key, value);
  else if (key == "index_cap") index_cap = parse_unsigned<std::size_t>(key, value);
  else if (key == "s4.alpha") s4_alpha = Ordinal::parse(value);
  else if (key == "s4ab.alpha") s4ab_alpha = Ordinal::parse(value);
  else if (key == "s4ab.beta") s4ab_beta = Ordinal::parse(value);
  else if (key == "s4ab.m_seq") s4ab_m = detail::parse_int_list(value);
  else if (key == "s4ab.n_seq") s4ab_n = detail::parse_int_list(value);
  else if (key == "block_sum.instances") block_sum_instances = parse_unsigned<std::size_t>(key, value);
  else if (key == "sandwich.instances") sandwich_instances = parse_unsigned<std::size_t>(key, value);
  else if (key == "qg.trials") qg_trials = parse_unsigned<std::size_t>(key, value);
  else if (key == "scan.trials") scan_trials = parse_unsigned<std::size_t>(key, value);
  else if (key == "oracle.universe") oracle_universe = parse_unsigned<unsigned>(key, value);
  else if (key == "half_start.max") half_start_max = parse_unsigned<std::uint64_t>(key, value);
  else if (key == "theta.imax") theta_imax = parse_unsigned<unsigned>(key, value);
  else if (key == "theta.m") theta_m = parse_int(value);
  else throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
}

inline RunConfig RunConfig::parse(std::istream& is) {
  RunConfig c;
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Parse, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
      throw Error(ErrorKind::Parse, "config key '" + key + "' repeated on line " + std::to_string(lineno));
    try {
      c.set(key, value);
    } catch (const Error& e) {
      throw Error(e.kind(), "config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (c.precision_bits < 64) throw Error(ErrorKind::InvalidArgument, "precision_bits must be at least 64");
  if (c.gauge.m_seq.size() != c.gauge.n_seq.size())
    throw Error(ErrorKind::InvalidArgument, "gauge.m_seq and gauge.n_seq differ in length");
  c.gauge.precision_bits = c.precision_bits;
  return c;
}

inline RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config '" + path + "'");
  return parse(in);
}

inline nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"seed", seed},
                      {"precision_bits", precision_bits},
                      {"digit_cap", digit_cap},
                      {"gauge",
                       {{"alpha", gauge.alpha.str()},
                        {"m_seq", detail::join(gauge.m_seq)},
                        {"n_seq", detail::join(gauge.n_seq)},
                        {"window_max_bits", bit_length(gauge.window_max)}}},
                      {"s4", {{"alpha", s4_alpha.str()}}},
                      {"s4ab",
                       {{"alpha", s4ab_alpha.str()},
                        {"beta", s4ab_beta.str()},
                        {"m_seq", detail::join(s4ab_m)},
                        {"n_seq", detail::join(s4ab_n)}}}};
  if (profile_path) j["profile"] = *profile_path;
  return j;
}

}  // namespace schreierlab
