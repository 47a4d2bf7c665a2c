#pragma once

#include "schreierlab/space_four.hpp"
#include "schreierlab/space_three.hpp"

#include <variant>

namespace schreierlab {

using Space = std::variant<ThreeSpace, FourSpace>;

inline NormValue norm(const Space& X, const BlockVector& x) {
  return std::visit([&](const auto& s) { return s.norm(x); }, X);
}

inline const Ordinal& space_alpha(const Space& X) {
  return std::visit([](const auto& s) -> const Ordinal& { return s.alpha(); }, X);
}

/// "s3", "s4aa" or "s4ab".
inline std::string space_kind(const Space& X) {
  if (std::holds_alternative<ThreeSpace>(X)) return "s3";
  return std::get<FourSpace>(X).beta() ? "s4ab" : "s4aa";
}

/// Seminorms that are unconditional by construction: restricting x to a
/// set never increases them.
inline std::vector<std::pair<std::string, Real>> unconditional_parts(const Space& X, const BlockVector& x) {
  if (const auto* s = std::get_if<ThreeSpace>(&X)) {
    std::vector<std::pair<std::string, Real>> out;
    auto first = s->seminorm1(x);
    if (first.is_exact()) out.emplace_back("1", first.value);
    out.emplace_back("2", s->seminorm2(x).value);
    out.emplace_back("3", s->seminorm3(x).value);
    return out;
  }
  const auto& f = std::get<FourSpace>(X);
  return {{"0", f.seminorm0(x)}, {"1", f.seminorm1(x)}};
}

enum class WitnessKind { IndicatorSchreier, DemocracyS3, UncondS3, EBlock, XYBlock, ABlock };

struct WitnessSpec {
  WitnessKind kind;
  Int n = 1;  // size, anchor, N or i depending on kind
  Ordinal order;
  bool alternating = false;
};

/// Parses "indicator:ORD:SIZE", "democracy:N", "uncond:M:+|-", "eblock:N",
/// "xy:N:+|-" and "ablock:I".
inline WitnessSpec parse_witness(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find(':', pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  auto need = [&](std::size_t n) {
    if (parts.size() != n) throw Error(ErrorKind::Parse, "malformed witness '" + text + "'");
  };
  auto sign = [&](const std::string& s) {
    if (s != "+" && s != "-") throw Error(ErrorKind::Parse, "witness sign must be + or -");
    return s == "-";
  };
  const auto& head = parts[0];
  if (head == "indicator") {
    need(3);
    return {WitnessKind::IndicatorSchreier, parse_int(parts[2]), Ordinal::parse(parts[1])};
  }
  if (head == "democracy") { need(2); return {WitnessKind::DemocracyS3, parse_int(parts[1])}; }
  if (head == "uncond") { need(3); return {WitnessKind::UncondS3, parse_int(parts[1]), {}, sign(parts[2])}; }
  if (head == "eblock") { need(2); return {WitnessKind::EBlock, parse_int(parts[1])}; }
  if (head == "xy") { need(3); return {WitnessKind::XYBlock, parse_int(parts[1]), {}, sign(parts[2])}; }
  if (head == "ablock") { need(2); return {WitnessKind::ABlock, parse_int(parts[1])}; }
  throw Error(ErrorKind::Parse, "unknown witness '" + head + "'");
}

inline BlockVector make_witness(const Space& X, const WitnessSpec& w) {
  auto wrong = [&](const char* kind) {
    return Error(ErrorKind::InvalidArgument, std::string(kind) + " witness needs a different space");
  };
  switch (w.kind) {
    case WitnessKind::IndicatorSchreier: return schreier_indicator(w.order, w.n);
    case WitnessKind::DemocracyS3:
      if (auto* s = std::get_if<ThreeSpace>(&X)) return s->democracy_witness(w.n);
      throw wrong("democracy");
    case WitnessKind::UncondS3:
      if (auto* s = std::get_if<ThreeSpace>(&X)) return s->uncond_witness(w.n, w.alternating);
      throw wrong("uncond");
    case WitnessKind::EBlock:
      if (auto* f = std::get_if<FourSpace>(&X)) return f->e_block(detail::to_index(w.n, "N"));
      throw wrong("eblock");
    case WitnessKind::XYBlock:
      if (auto* f = std::get_if<FourSpace>(&X)) return f->xy_block(detail::to_index(w.n, "N"), w.alternating);
      throw wrong("xy");
    case WitnessKind::ABlock:
      if (auto* f = std::get_if<FourSpace>(&X); f && f->beta()) return f->a_block(detail::to_index(w.n, "i"));
      throw wrong("ablock");
  }
  throw Error(ErrorKind::InvalidArgument, "unknown witness kind");
}

}  // namespace schreierlab
