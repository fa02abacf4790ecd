#pragma once

#include <chrono>
#include <cstdint>

namespace wearsim {

/// Logical simulation clock. Time points count milliseconds since the start
/// of a run; nothing in the library reads the wall clock directly, so every
/// timing-dependent path can be driven deterministically.
struct SimClock {
  using rep = std::int64_t;
  using period = std::milli;
  using duration = std::chrono::duration<rep, period>;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using SimTime = SimClock::time_point;
using SimDuration = SimClock::duration;

inline constexpr SimTime sim_epoch{};

inline constexpr SimTime at_seconds(double s) {
  return SimTime{SimDuration{static_cast<std::int64_t>(s * 1000.0 + (s >= 0 ? 0.5 : -0.5))}};
}

inline constexpr std::int64_t millis(SimTime t) { return t.time_since_epoch().count(); }

}  // namespace wearsim
