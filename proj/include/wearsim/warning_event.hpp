#pragma once

#include <optional>
#include <string>

namespace wearsim {

/// Codes 1..15 are warnings, 16..31 notifications.
inline constexpr int kFirstNotificationCode = 16;
inline constexpr int kMaxEventCode = 31;

/// Timer expiry of a time-critical treatment step.
inline constexpr int kTimerOverdueCode = 16;
/// Graph-provided hint attached to the node just entered.
inline constexpr int kNodeHintCode = 17;

constexpr bool is_notification_code(int code) { return code >= kFirstNotificationCode; }

struct WarningEvent {
  int code = 0;
  std::string message;
  std::optional<std::string> node;  ///< treatment node the event refers to, if any

  bool is_notification() const { return is_notification_code(code); }

  friend bool operator==(const WarningEvent&, const WarningEvent&) = default;
};

}  // namespace wearsim
