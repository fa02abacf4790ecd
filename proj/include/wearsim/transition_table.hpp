#pragma once

// Screen transition table loaded from data/transitions.table.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wearsim/default_data.hpp"
#include "wearsim/error.hpp"
#include "wearsim/frame_state.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::ui {

/// Events raised by the system rather than by a button.
inline bool is_system_event(std::string_view event) {
  return event == "warning" || event == "notification" || event == "approval" || event == "detection_ready";
}

struct TransitionRule {
  std::string from;  // screen name, '~' or '*'
  std::string event;
  std::string to;  // screen name or '@return'

  friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

class TransitionTable {
 public:
  static TransitionTable parse(std::string_view doc) {
    TransitionTable t;
    int lineno = 0;
    for (auto raw : text::lines(doc)) {
      ++lineno;
      const auto line = text::trim(raw.substr(0, raw.find('#')));
      if (line.empty()) continue;
      const auto cols = text::split_ws(line);
      const auto where = "transition table line " + std::to_string(lineno);
      if (cols.size() != 3) throw ParseError(where + ": expected 'from event to'");
      if (cols[0] != "~" && cols[0] != "*" && !parse_screen(cols[0])) {
        throw ParseError(where + ": unknown screen '" + std::string(cols[0]) + "'");
      }
      if (cols[2] != "@return" && !parse_screen(cols[2])) {
        throw ParseError(where + ": unknown screen '" + std::string(cols[2]) + "'");
      }
      TransitionRule rule{std::string(cols[0]), std::string(cols[1]), std::string(cols[2])};
      for (const auto& r : t.rules_) {
        if (r.from == rule.from && r.event == rule.event) {
          throw ParseError(where + ": duplicate rule for " + rule.from + " " + rule.event);
        }
      }
      t.rules_.push_back(std::move(rule));
    }
    return t;
  }

  static const TransitionTable& standard() {
    static const TransitionTable table = parse(defaults::transitions);
    return table;
  }

  const std::vector<TransitionRule>& rules() const { return rules_; }

  /// Rule that applies to `event` on `from`: exact rows first, then '~'
  /// (non-modal screens only), then '*'.
  const TransitionRule* lookup(ScreenId from, std::string_view event) const {
    const auto name = to_string(from);
    for (const char* pass : {"exact", "~", "*"}) {
      for (const auto& r : rules_) {
        if (r.event != event) continue;
        const bool hit = std::string_view(pass) == "exact" ? r.from == name
                         : std::string_view(pass) == "~"   ? r.from == "~" && !is_modal(from)
                                                           : r.from == "*";
        if (hit) return &r;
      }
    }
    return nullptr;
  }

  bool allows(ScreenId from, std::string_view event) const { return lookup(from, event) != nullptr; }

  /// Next screen. `preempted` is the screen a modal covers, used by '@return'.
  ScreenId transition(ScreenId current, std::string_view event, std::optional<ScreenId> preempted = {}) const {
    const auto* rule = lookup(current, event);
    if (!rule) {
      throw InvalidTransition("no transition from " + std::string(to_string(current)) + " on '" +
                              std::string(event) + "'");
    }
    if (rule->to == "@return") {
      if (!preempted) throw InvalidTransition(std::string(to_string(current)) + " has no screen to return to");
      return *preempted;
    }
    return *parse_screen(rule->to);
  }

  /// Events with a rule on `from`.
  std::vector<std::string> events(ScreenId from) const {
    std::vector<std::string> out;
    for (const auto& r : rules_) {
      if (lookup(from, r.event) == &r && std::find(out.begin(), out.end(), r.event) == out.end()) {
        out.push_back(r.event);
      }
    }
    return out;
  }

  /// Screens from which some sequence of button presses ends on `target`.
  /// A '@return' counts only when every screen it might resume reaches
  /// `target` in turn. Stacked modals unwind to a screen without a
  /// '@return' rule, so those are the screens that matter.
  std::set<ScreenId> screens_reaching(ScreenId target) const {
    std::set<ScreenId> good{target};
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto s : kAllScreens) {
        if (good.count(s)) continue;
        for (const auto& ev : events(s)) {
          if (is_system_event(ev)) continue;
          const auto* rule = lookup(s, ev);
          bool ok = false;
          if (rule->to == "@return") {
            ok = std::all_of(kAllScreens.begin(), kAllScreens.end(),
                             [&](ScreenId p) { return returns(p) || good.count(p); });
          } else {
            ok = good.count(*parse_screen(rule->to)) != 0;
          }
          if (ok) {
            good.insert(s);
            changed = true;
            break;
          }
        }
      }
    }
    return good;
  }

  /// True when some rule on `s` resumes a preempted screen.
  bool returns(ScreenId s) const {
    for (const auto& ev : events(s)) {
      if (lookup(s, ev)->to == "@return") return true;
    }
    return false;
  }

 private:
  std::vector<TransitionRule> rules_;
};

}  // namespace wearsim::ui
