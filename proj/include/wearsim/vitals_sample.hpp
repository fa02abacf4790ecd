#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace wearsim {

/// One timestamped set of patient vitals.
struct VitalsSample {
  double t = 0.0;     ///< seconds from scenario start
  int spo2 = 0;       ///< percent, 0..100
  int pulse = 0;      ///< bpm, 0..300
  int bp_sys = 0;     ///< mmHg, 0..300
  int bp_dia = 0;     ///< mmHg, 0..300, <= bp_sys
  int resp_rate = 0;  ///< breaths/min, 0..80

  friend bool operator==(const VitalsSample&, const VitalsSample&) = default;
};

inline constexpr std::array<std::string_view, 5> vitals_fields{"spo2", "pulse", "bp_sys", "bp_dia",
                                                               "resp_rate"};

/// Reads a vitals field by its slot/rule name.
inline std::optional<int> vitals_field(const VitalsSample& s, std::string_view name) {
  if (name == "spo2") return s.spo2;
  if (name == "pulse") return s.pulse;
  if (name == "bp_sys") return s.bp_sys;
  if (name == "bp_dia") return s.bp_dia;
  if (name == "resp_rate") return s.resp_rate;
  return std::nullopt;
}

inline bool is_vitals_field(std::string_view name) { return vitals_field(VitalsSample{}, name).has_value(); }

/// Empty when the sample is physically plausible, else a description of the
/// first out-of-range field.
inline std::optional<std::string> check_ranges(const VitalsSample& s) {
  auto bad = [](std::string_view f, int v, int hi) -> std::optional<std::string> {
    if (v < 0 || v > hi) return std::string(f) + "=" + std::to_string(v) + " outside 0.." + std::to_string(hi);
    return std::nullopt;
  };
  if (auto e = bad("spo2", s.spo2, 100)) return e;
  if (auto e = bad("pulse", s.pulse, 300)) return e;
  if (auto e = bad("bp_sys", s.bp_sys, 300)) return e;
  if (auto e = bad("bp_dia", s.bp_dia, 300)) return e;
  if (auto e = bad("resp_rate", s.resp_rate, 80)) return e;
  if (s.bp_dia > s.bp_sys) {
    return "bp_dia=" + std::to_string(s.bp_dia) + " exceeds bp_sys=" + std::to_string(s.bp_sys);
  }
  return std::nullopt;
}

}  // namespace wearsim
