#pragma once

#include <optional>
#include <string_view>

namespace wearsim {

enum class Comparator { GT, GE, LT, LE, EQ };

constexpr std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::GT: return "GT";
    case Comparator::GE: return "GE";
    case Comparator::LT: return "LT";
    case Comparator::LE: return "LE";
    case Comparator::EQ: return "EQ";
  }
  return "?";
}

constexpr std::string_view symbol(Comparator c) {
  switch (c) {
    case Comparator::GT: return ">";
    case Comparator::GE: return ">=";
    case Comparator::LT: return "<";
    case Comparator::LE: return "<=";
    case Comparator::EQ: return "==";
  }
  return "?";
}

/// Accepts both the mnemonic ("GT") and the symbolic (">") spelling.
constexpr std::optional<Comparator> parse_comparator(std::string_view s) {
  if (s == "GT" || s == ">") return Comparator::GT;
  if (s == "GE" || s == ">=") return Comparator::GE;
  if (s == "LT" || s == "<") return Comparator::LT;
  if (s == "LE" || s == "<=") return Comparator::LE;
  if (s == "EQ" || s == "==") return Comparator::EQ;
  return std::nullopt;
}

constexpr bool compare(double value, Comparator c, double bound) {
  switch (c) {
    case Comparator::GT: return value > bound;
    case Comparator::GE: return value >= bound;
    case Comparator::LT: return value < bound;
    case Comparator::LE: return value <= bound;
    case Comparator::EQ: return value == bound;
  }
  return false;
}

}  // namespace wearsim
