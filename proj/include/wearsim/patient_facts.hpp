#pragma once

#include <cstdio>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "wearsim/error.hpp"

namespace wearsim {

using FactValue = std::variant<double, std::string>;

/// Open key/value store of patient facts. Only `age_years` (number >= 0),
/// `sex` (M, F or X) and `name` (string) are checked.
class PatientFacts {
 public:
  PatientFacts() = default;
  PatientFacts(std::initializer_list<std::pair<const std::string, FactValue>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }

  void set(const std::string& key, FactValue value) {
    if (key == "age_years") {
      const auto* n = std::get_if<double>(&value);
      if (!n) throw FactError("age_years must be a number");
      if (!(*n >= 0)) throw FactError("age_years must be >= 0, got " + std::to_string(*n));
    } else if (key == "sex") {
      const auto* s = std::get_if<std::string>(&value);
      if (!s || (*s != "M" && *s != "F" && *s != "X")) throw FactError("sex must be one of M, F, X");
    } else if (key == "name") {
      if (!std::holds_alternative<std::string>(value)) throw FactError("name must be a string");
    } else if (key.empty()) {
      throw FactError("fact key must not be empty");
    }
    values_[key] = std::move(value);
  }

  bool contains(std::string_view key) const { return values_.find(std::string(key)) != values_.end(); }

  const FactValue* find(std::string_view key) const {
    auto it = values_.find(std::string(key));
    return it == values_.end() ? nullptr : &it->second;
  }

  std::optional<double> number(std::string_view key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* n = std::get_if<double>(v)) return *n;
    return std::nullopt;
  }

  std::optional<std::string> string(std::string_view key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    return std::nullopt;
  }

  const std::map<std::string, FactValue>& values() const noexcept { return values_; }

  friend bool operator==(const PatientFacts&, const PatientFacts&) = default;

 private:
  std::map<std::string, FactValue> values_;
};

/// Bus encoding of the sex fact: 0 unknown, 1 M, 2 F, 3 X.
inline int sex_code(const std::optional<std::string>& sex) {
  if (!sex) return 0;
  if (*sex == "M") return 1;
  if (*sex == "F") return 2;
  if (*sex == "X") return 3;
  return 0;
}

inline std::string_view sex_from_code(int code) {
  switch (code) {
    case 1: return "M";
    case 2: return "F";
    case 3: return "X";
    default: return "?";
  }
}

/// Renders a fact value the way it appears in logs and evidence strings:
/// integral numbers without a fractional part.
inline std::string format_fact(const FactValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (d == static_cast<double>(static_cast<long long>(d))) return std::to_string(static_cast<long long>(d));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", d);
  return buf;
}

}  // namespace wearsim
