#pragma once

// Scenario replay and synthesis of patient vitals, threshold warnings, and
// the producer side of the shared-memory handoff.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stop_token>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wearsim/comparator.hpp"
#include "wearsim/error.hpp"
#include "wearsim/patient_facts.hpp"
#include "wearsim/shared_memory_bus.hpp"
#include "wearsim/sim_clock.hpp"
#include "wearsim/situation_detection.hpp"
#include "wearsim/text_util.hpp"
#include "wearsim/vitals_sample.hpp"
#include "wearsim/warning_event.hpp"

namespace wearsim::feed {

struct Scenario {
  PatientFacts patient;
  std::vector<VitalsSample> samples;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// Scenario files
//
//   # comment
//   name: Erika Mustermann
//   sex: F
//   age_years: 40
//   ---
//   t,spo2,pulse,bp_sys,bp_dia,resp_rate
//   0,98,72,122,78,14

inline Scenario load_scenario(std::string_view doc) {
  Scenario out;
  const auto all = text::lines(doc);
  std::size_t i = 0;
  bool saw_separator = false;
  for (; i < all.size(); ++i) {
    auto line = text::trim(all[i]);
    if (line.empty() || line.front() == '#') continue;
    if (line == "---") {
      saw_separator = true;
      ++i;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("scenario line " + std::to_string(i + 1) + ": expected 'key: value' in header");
    }
    const std::string key(text::trim(line.substr(0, colon)));
    const std::string value(text::trim(line.substr(colon + 1)));
    try {
      if (key == "name" || key == "sex") {
        out.patient.set(key, value);
      } else if (auto n = text::parse_number<double>(value)) {
        out.patient.set(key, *n);
      } else {
        out.patient.set(key, value);
      }
    } catch (const FactError& e) {
      throw ParseError("scenario line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!saw_separator) throw ParseError("scenario: missing '---' between header and samples");

  // Column header.
  for (; i < all.size(); ++i) {
    auto line = text::trim(all[i]);
    if (line.empty() || line.front() == '#') continue;
    std::string cols;
    for (auto c : text::split(line, ',')) cols += std::string(text::trim(c)) + ",";
    if (cols != "t,spo2,pulse,bp_sys,bp_dia,resp_rate,") {
      throw ParseError("scenario line " + std::to_string(i + 1) +
                       ": expected column header 't,spo2,pulse,bp_sys,bp_dia,resp_rate'");
    }
    ++i;
    break;
  }

  int row = 0;
  for (; i < all.size(); ++i) {
    auto line = text::trim(all[i]);
    if (line.empty() || line.front() == '#') continue;
    ++row;
    const auto where = "scenario row " + std::to_string(row) + " (line " + std::to_string(i + 1) + ")";
    const auto cells = text::split(line, ',');
    if (cells.size() != 6) throw ParseError(where + ": expected 6 columns");
    VitalsSample s;
    auto t = text::parse_number<double>(cells[0]);
    if (!t || !std::isfinite(*t) || *t < 0) throw ParseError(where + ": bad time '" + std::string(cells[0]) + "'");
    s.t = *t;
    int* fields[] = {&s.spo2, &s.pulse, &s.bp_sys, &s.bp_dia, &s.resp_rate};
    for (std::size_t c = 0; c < 5; ++c) {
      auto v = text::parse_number<int>(cells[c + 1]);
      if (!v) throw ParseError(where + ": bad value '" + std::string(cells[c + 1]) + "'");
      *fields[c] = *v;
    }
    if (auto err = check_ranges(s)) throw ParseError(where + ": " + *err);
    if (!out.samples.empty() && s.t <= out.samples.back().t) {
      throw OrderError(where + ": t=" + std::string(text::trim(cells[0])) + " does not increase");
    }
    out.samples.push_back(s);
  }
  if (out.samples.empty()) throw ParseError("scenario has no samples");
  return out;
}

inline std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  for (const auto& [k, v] : s.patient.values()) out << k << ": " << format_fact(v) << '\n';
  out << "---\n";
  out << "t,spo2,pulse,bp_sys,bp_dia,resp_rate\n";
  for (const auto& v : s.samples) {
    out << format_fact(v.t) << ',' << v.spo2 << ',' << v.pulse << ',' << v.bp_sys << ',' << v.bp_dia << ','
        << v.resp_rate << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Synthetic scenarios

enum class Profile { Stable, Deteriorating, Arrest };

inline std::optional<Profile> parse_profile(std::string_view s) {
  if (s == "stable") return Profile::Stable;
  if (s == "deteriorating") return Profile::Deteriorating;
  if (s == "arrest") return Profile::Arrest;
  return std::nullopt;
}

namespace detail {

/// mt19937_64's output sequence is fully specified by the standard; the
/// standard distributions are not, so the mapping to [0,1) is done here.
class PortableRandom {
 public:
  explicit PortableRandom(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

inline int clamp_round(double v, int lo, int hi) {
  return std::clamp(static_cast<int>(std::lround(v)), lo, hi);
}

}  // namespace detail

/// One sample per second for `duration_s` seconds. Equal arguments give
/// identical scenarios on every platform.
inline Scenario synth_scenario(std::uint64_t seed, int duration_s, Profile profile) {
  if (duration_s <= 0) throw ParseError("synthetic scenario duration must be > 0");
  detail::PortableRandom rng(seed);
  Scenario out;
  out.patient.set("name", std::string("Testpatient ") + std::to_string(seed));
  out.patient.set("sex", std::string(seed % 2 == 0 ? "M" : "F"));
  out.patient.set("age_years", static_cast<double>(18 + seed % 60));

  const int n = duration_s;
  double pulse_walk = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = n > 1 ? static_cast<double>(i) / (n - 1) : 1.0;
    VitalsSample s;
    s.t = i;
    switch (profile) {
      case Profile::Stable: {
        pulse_walk = std::clamp(pulse_walk + rng.uniform(-2.0, 2.0), -10.0, 12.0);
        s.spo2 = detail::clamp_round(97.5 + rng.uniform(-1.5, 1.5), 95, 100);
        s.pulse = detail::clamp_round(76.0 + pulse_walk + rng.uniform(-1.0, 1.0), 62, 98);
        s.bp_sys = detail::clamp_round(122.0 + rng.uniform(-6.0, 6.0), 110, 135);
        s.bp_dia = detail::clamp_round(78.0 + rng.uniform(-5.0, 5.0), 68, 88);
        s.resp_rate = detail::clamp_round(15.0 + rng.uniform(-2.0, 2.0), 12, 18);
        break;
      }
      case Profile::Deteriorating: {
        s.spo2 = detail::clamp_round(97.0 - 13.0 * p + rng.uniform(-1.0, 1.0), 0, 100);
        s.pulse = detail::clamp_round(80.0 + 60.0 * p + rng.uniform(-2.0, 2.0), 0, 300);
        s.bp_sys = detail::clamp_round(125.0 - 40.0 * p + rng.uniform(-3.0, 3.0), 0, 300);
        s.bp_dia = detail::clamp_round(80.0 - 25.0 * p + rng.uniform(-3.0, 3.0), 0, 300);
        s.resp_rate = detail::clamp_round(16.0 + 14.0 * p + rng.uniform(-1.0, 1.0), 0, 80);
        break;
      }
      case Profile::Arrest: {
        // Deterioration over the first 70 %, then collapse to zero output.
        constexpr double kCollapse = 0.7;
        if (p <= kCollapse) {
          const double q = p / kCollapse;
          s.spo2 = detail::clamp_round(96.0 - 10.0 * q + rng.uniform(-1.0, 1.0), 0, 100);
          s.pulse = detail::clamp_round(85.0 + 50.0 * q + rng.uniform(-2.0, 2.0), 0, 300);
          s.bp_sys = detail::clamp_round(120.0 - 30.0 * q + rng.uniform(-3.0, 3.0), 0, 300);
          s.bp_dia = detail::clamp_round(78.0 - 18.0 * q + rng.uniform(-3.0, 3.0), 0, 300);
          s.resp_rate = detail::clamp_round(16.0 + 12.0 * q + rng.uniform(-1.0, 1.0), 0, 80);
        } else {
          const double q = (p - kCollapse) / (1.0 - kCollapse);
          const double left = 1.0 - q;
          s.spo2 = detail::clamp_round(86.0 - 26.0 * q + rng.uniform(-1.0, 1.0), 0, 100);
          s.pulse = detail::clamp_round(135.0 * left * left, 0, 300);
          s.bp_sys = detail::clamp_round(90.0 * left, 0, 300);
          s.bp_dia = detail::clamp_round(60.0 * left, 0, 300);
          s.resp_rate = detail::clamp_round(28.0 * left, 0, 80);
        }
        if (i == n - 1) {
          s.pulse = 0;
          s.bp_sys = s.bp_dia = s.resp_rate = 0;
        }
        break;
      }
    }
    s.bp_dia = std::min(s.bp_dia, s.bp_sys);
    out.samples.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Threshold warnings

struct ThresholdRule {
  std::string field;
  Comparator comparator = Comparator::LT;
  double bound = 0;
  int warning_code = 0;
  std::string message;
};

/// One rule per line: `code field comparator bound message...`.
inline std::vector<ThresholdRule> parse_threshold_rules(std::string_view doc) {
  std::vector<ThresholdRule> out;
  std::set<int> codes;
  int lineno = 0;
  for (auto raw : text::lines(doc)) {
    ++lineno;
    auto line = text::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto where = "threshold rules line " + std::to_string(lineno);
    const auto cols = text::split_ws(line);
    if (cols.size() < 5) throw ParseError(where + ": expected 'code field comparator bound message'");
    auto code = text::parse_number<int>(cols[0]);
    if (!code || *code < 1 || *code > kMaxEventCode) throw ParseError(where + ": code must be in 1..31");
    if (!codes.insert(*code).second) throw ParseError(where + ": code " + std::to_string(*code) + " repeated");
    if (!is_vitals_field(cols[1])) throw ParseError(where + ": unknown field '" + std::string(cols[1]) + "'");
    auto cmp = parse_comparator(cols[2]);
    auto bound = text::parse_number<double>(cols[3]);
    if (!cmp || !bound) throw ParseError(where + ": malformed comparator or bound");
    const auto msg_start = static_cast<std::size_t>(cols[4].data() - line.data());
    out.push_back({std::string(cols[1]), *cmp, *bound, *code, std::string(line.substr(msg_start))});
  }
  return out;
}

/// One event per violated rule, ordered by warning code.
inline std::vector<WarningEvent> check_thresholds(const VitalsSample& sample, const std::vector<ThresholdRule>& rules) {
  std::vector<WarningEvent> out;
  for (const auto& r : rules) {
    const auto v = vitals_field(sample, r.field);
    if (v && compare(*v, r.comparator, r.bound)) out.push_back({r.warning_code, r.message, std::nullopt});
  }
  std::sort(out.begin(), out.end(), [](const WarningEvent& a, const WarningEvent& b) { return a.code < b.code; });
  return out;
}

inline std::optional<std::string> message_for_code(const std::vector<ThresholdRule>& rules, int code) {
  for (const auto& r : rules) {
    if (r.warning_code == code) return r.message;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Producer

struct PublishEffect {
  SimTime at;
  std::string slot;
  bus::BusValue value;

  friend bool operator==(const PublishEffect&, const PublishEffect&) = default;
};

/// Producer role: publishes every scenario sample into the bus once its time
/// has come. Patient facts go out with the first sample, a warning code only
/// when a rule becomes newly violated (the highest such code), and the
/// leading situation id whenever it changes.
class FeedPump {
 public:
  FeedPump(Scenario scenario, bus::BusRegion& bus, std::vector<ThresholdRule> rules,
           situation::Detector detector = {})
      : scenario_(std::move(scenario)), bus_(&bus), rules_(std::move(rules)), detector_(std::move(detector)) {}

  bool finished() const { return next_ >= scenario_.samples.size(); }

  /// Sim time of the next sample, if any remain.
  std::optional<SimTime> next_due() const {
    if (finished()) return std::nullopt;
    return at_seconds(scenario_.samples[next_].t);
  }

  const Scenario& scenario() const { return scenario_; }

  /// Publishes all samples due at or before `now`.
  std::vector<PublishEffect> advance_to(SimTime now) {
    std::vector<PublishEffect> effects;
    while (!finished() && at_seconds(scenario_.samples[next_].t) <= now) {
      publish_sample(scenario_.samples[next_], effects);
      ++next_;
    }
    return effects;
  }

  /// Slots the map lacks; each is reported once.
  const std::vector<std::string>& skipped_slots() const { return skipped_; }

 private:
  void put(SimTime at, const std::string& slot, bus::BusValue value, std::vector<PublishEffect>& effects) {
    if (!bus_->map().find(slot)) {
      if (std::find(skipped_.begin(), skipped_.end(), slot) == skipped_.end()) skipped_.push_back(slot);
      return;
    }
    bus_->publish(slot, value);
    effects.push_back({at, slot, value});
  }

  void publish_sample(const VitalsSample& s, std::vector<PublishEffect>& effects) {
    const SimTime at = at_seconds(s.t);
    if (next_ == 0) {
      if (auto age = scenario_.patient.number("age_years")) put(at, "age_years", static_cast<std::int32_t>(*age), effects);
      put(at, "sex_code", static_cast<std::int32_t>(sex_code(scenario_.patient.string("sex"))), effects);
    }
    for (auto field : vitals_fields) put(at, std::string(field), *vitals_field(s, field), effects);

    std::set<int> now_active;
    int newest = 0;
    for (const auto& w : check_thresholds(s, rules_)) {
      now_active.insert(w.code);
      if (!active_.count(w.code)) newest = std::max(newest, w.code);
    }
    active_ = std::move(now_active);
    if (newest > 0) put(at, "warning_code", static_cast<std::int32_t>(newest), effects);

    if (detector_) {
      const auto top = situation::top_k(detector_(s), 1).front().group;
      if (!last_top_ || *last_top_ != top) {
        last_top_ = top;
        put(at, "situation", situation::encode_id_word(situation::group_to_id(top)), effects);
      }
    }
  }

  Scenario scenario_;
  bus::BusRegion* bus_;
  std::vector<ThresholdRule> rules_;
  situation::Detector detector_;
  std::size_t next_ = 0;
  std::set<int> active_;
  std::optional<situation::IllnessGroup> last_top_;
  std::vector<std::string> skipped_;
};

/// Runs the pump against the wall clock, `speed` scenario seconds per wall
/// second, until the scenario ends or a stop is requested.
inline void run_realtime(FeedPump& pump, double speed, std::stop_token stop,
                         const std::function<void(const PublishEffect&)>& on_effect = {}) {
  if (!(speed > 0)) throw ConfigError("speed must be > 0");
  using wall = std::chrono::steady_clock;
  const auto start = wall::now();
  while (!pump.finished() && !stop.stop_requested()) {
    const auto due = *pump.next_due();
    const auto wall_due =
        start + std::chrono::duration_cast<wall::duration>(std::chrono::duration<double, std::milli>(
                    static_cast<double>(millis(due)) / speed));
    while (wall::now() < wall_due && !stop.stop_requested()) {
      std::this_thread::sleep_until(std::min(wall_due, wall::now() + std::chrono::milliseconds(20)));
    }
    if (stop.stop_requested()) break;
    for (const auto& e : pump.advance_to(due)) {
      if (on_effect) on_effect(e);
    }
  }
}

}  // namespace wearsim::feed
