#pragma once

// Screen state machine and frame composition.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wearsim/defaults.hpp"
#include "wearsim/frame_state.hpp"
#include "wearsim/icons.hpp"
#include "wearsim/recommendation_engine.hpp"
#include "wearsim/shared_memory_bus.hpp"
#include "wearsim/situation_detection.hpp"
#include "wearsim/text_renderer.hpp"
#include "wearsim/transition_table.hpp"
#include "wearsim/vitals_feed.hpp"

namespace wearsim::ui {

namespace palette {
inline constexpr Rgb neutral{70, 70, 80};
inline constexpr Rgb green{20, 140, 60};
inline constexpr Rgb red{190, 30, 30};
inline constexpr Rgb panel{240, 240, 240};
inline constexpr Rgb tile_fills[] = {{40, 90, 200}, {20, 140, 60}, {110, 70, 160}, {200, 150, 0},
                                     {190, 30, 30}, {70, 110, 110}, {90, 90, 90}};
inline constexpr Rgb warning{170, 20, 20};
inline constexpr Rgb notification{30, 70, 160};
inline constexpr Rgb approval{50, 50, 60};
inline constexpr Rgb vitals{25, 35, 60};
}  // namespace palette

inline Rgb fill_for(ColorRole r) {
  switch (r) {
    case ColorRole::Green:
      return palette::green;
    case ColorRole::Red:
      return palette::red;
    case ColorRole::Neutral:
      break;
  }
  return palette::neutral;
}

/// Label fitted to `box`; long text is cut back rather than clipped.
inline Label make_label(std::string_view text, Rect box, bool wrap = true,
                        const render::FontCatalog& catalog = render::FontCatalog::standard()) {
  const auto fitted = render::fit_label(text.empty() ? std::string_view("-") : text,
                                        render::TextBox(box.w, box.h), catalog, wrap);
  return Label{fitted.text, box, fitted.layout.size, wrap, fitted.layout.lines};
}

inline Element text_element(std::string id, Rect rect, std::string_view text, Rgb color,
                            std::optional<Rgb> fill = std::nullopt, bool wrap = true) {
  Element e;
  e.id = std::move(id);
  e.kind = ElementKind::Text;
  e.rect = rect;
  e.color = color;
  e.fill = fill;
  e.label = make_label(text, fill ? rect.inset(2) : rect, wrap);
  return e;
}

inline ButtonSpec make_button(std::string id, ButtonKind kind, Rect rect, std::string_view text, ColorRole role,
                              std::optional<std::string> icon = std::nullopt) {
  ButtonSpec b;
  b.id = std::move(id);
  b.kind = kind;
  b.rect = rect;
  b.role = role;
  b.fill = fill_for(role);
  if (icon) {
    const Rect icon_rect{rect.x + 6, rect.y + (rect.h - kIconSize) / 2, kIconSize, kIconSize};
    b.icon = IconRef{*icon, icon_rect};
    const Rect label_box{icon_rect.right() + 4, rect.y + kLabelInset, rect.right() - icon_rect.right() - 4 - kLabelInset,
                         rect.h - 2 * kLabelInset};
    if (!text.empty()) b.label = make_label(text, label_box);
  } else {
    b.label = make_label(text, rect.inset(kLabelInset));
  }
  return b;
}

inline ButtonSpec side_button(std::string id, Corner corner, std::string_view text, ColorRole role,
                              std::optional<std::string> icon = std::nullopt) {
  return make_button(std::move(id), ButtonKind::Side, ui::side_button(corner), text, role, std::move(icon));
}

inline std::string clock_string(int seconds_of_day) {
  seconds_of_day = ((seconds_of_day % 86400) + 86400) % 86400;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", seconds_of_day / 3600, seconds_of_day / 60 % 60,
                seconds_of_day % 60);
  return buf;
}

/// Everything a frame depends on. compose() is a pure function of it.
struct ComposeInput {
  ScreenId screen = ScreenId::MainMenu;
  std::optional<ScreenId> base;
  const engine::Session* session = nullptr;
  std::vector<situation::RankedGroup> detection;
  int situation_cursor = 0;
  std::vector<std::string> treatment_titles;
  int treatment_cursor = 0;
  std::map<std::string, std::int32_t> vitals;
  PatientFacts facts;
  std::string clock = "00:00:00";
  int battery_percent = 100;
  std::optional<WarningEvent> warning;
  std::optional<std::string> timer_text;
  std::vector<std::string> alarm_lines;
  std::vector<std::string> log_lines;
  std::vector<std::string> settings_lines;
};

namespace detail {

inline constexpr Corner kOptionCorners[] = {Corner::TopRight, Corner::BottomRight, Corner::BottomLeft,
                                            Corner::TopLeft};

inline Header compose_header(const ComposeInput& in) {
  Header h;
  h.time = in.clock;
  h.battery_percent = in.battery_percent;
  h.menu = make_button("menu", ButtonKind::Header, kMenuButton, "Menü", ColorRole::Neutral);
  h.elements.push_back(text_element("header:time", kHeaderTime, in.clock, colors::white, std::nullopt, false));
  h.elements.push_back(text_element("header:battery", kBatteryText, std::to_string(in.battery_percent) + "%",
                                    colors::white, std::nullopt, false));
  Element icon;
  icon.id = "header:battery-icon";
  icon.kind = ElementKind::Icon;
  icon.rect = kBatteryIcon;
  icon.icon = "battery";
  h.elements.push_back(std::move(icon));
  return h;
}

inline Element title_element(std::string_view text) {
  return text_element("title", kTopColumn.inset(2), text, colors::white);
}

inline void list_rows(FrameState& f, const std::vector<std::string>& rows, int cursor, bool selectable,
                      std::string_view empty_text) {
  if (rows.empty()) {
    f.central.push_back(text_element("empty", list_row(0), empty_text, colors::white));
    return;
  }
  for (int i = 0; i < static_cast<int>(rows.size()) && i < kListRows; ++i) {
    const bool selected = selectable && i == cursor;
    f.central.push_back(text_element("row:" + std::to_string(i), list_row(i), rows[static_cast<std::size_t>(i)],
                                     selected ? colors::black : colors::white,
                                     selected ? std::optional<Rgb>(colors::white) : std::nullopt, false));
  }
}

inline void list_buttons(FrameState& f, bool can_accept) {
  f.side_buttons.push_back(side_button("up", Corner::TopLeft, "Hoch", ColorRole::Neutral, "up"));
  f.side_buttons.push_back(side_button("down", Corner::BottomLeft, "Runter", ColorRole::Neutral, "down"));
  f.side_buttons.push_back(side_button("back", Corner::TopRight, "Zurück", ColorRole::Red));
  if (can_accept) f.side_buttons.push_back(side_button("accept", Corner::BottomRight, "Auswählen", ColorRole::Green));
}

inline const engine::Session& need_session(const ComposeInput& in, ScreenId s) {
  if (!in.session) throw InconsistentInput(std::string(to_string(s)) + " needs a treatment session");
  return *in.session;
}

inline void compose_main_menu(FrameState& f) {
  struct Tile {
    ScreenId target;
    const char* label;
    const char* icon;
  };
  static constexpr Tile tiles[] = {
      {ScreenId::PatientMonitor, "Monitor", "heart"},     {ScreenId::Treatment, "Behandlung", "next"},
      {ScreenId::AllTreatments, "Alle BPR", "graph"},     {ScreenId::SituationSelect, "Situation", "search"},
      {ScreenId::Alarms, "Alarme", "bell"},               {ScreenId::Logging, "Protokoll", "list"},
      {ScreenId::Settings, "Einstel-\nlungen", "gear"},
  };
  for (int i = 0; i < 7; ++i) {
    const auto& t = tiles[i];
    const Rect r = menu_tile(i);
    ButtonSpec b;
    b.id = "tile:" + std::string(to_string(t.target));
    b.kind = ButtonKind::Tile;
    b.rect = r;
    b.fill = palette::tile_fills[i];
    b.icon = IconRef{t.icon, Rect{r.x + (r.w - kIconSize) / 2, r.y + 10, kIconSize, kIconSize}};
    b.label = make_label(t.label, Rect{r.x + 2, r.y + 40, r.w - 4, r.h - 44});
    f.tiles.push_back(std::move(b));
  }
}

inline void compose_monitor(FrameState& f, const ComposeInput& in) {
  auto vital = [&](const char* key) -> std::optional<std::int32_t> {
    auto it = in.vitals.find(key);
    if (it == in.vitals.end()) return std::nullopt;
    return it->second;
  };
  auto show = [](std::optional<std::int32_t> v) { return v ? std::to_string(*v) : std::string("--"); };
  auto add = [&](std::string id, Rect r, std::string text, std::string value) {
    auto e = text_element(std::move(id), r, text, colors::white, palette::vitals, false);
    e.kind = ElementKind::Vitals;
    e.value = std::move(value);
    f.central.push_back(std::move(e));
  };
  const auto spo2 = vital("spo2"), pulse = vital("pulse"), sys = vital("bp_sys"), dia = vital("bp_dia"),
             resp = vital("resp_rate");
  add("vital:spo2", {4, 81, 154, 50}, "SpO2 " + show(spo2) + " %", show(spo2));
  add("vital:pulse", {162, 81, 154, 50}, "Puls " + show(pulse), show(pulse));
  add("vital:bp", {4, 133, 154, 50}, "RR " + show(sys) + "/" + show(dia), show(sys) + "/" + show(dia));
  add("vital:resp_rate", {162, 133, 154, 50}, "AF " + show(resp), show(resp));

  const auto name = in.facts.string("name").value_or("Unbekannt");
  std::string sex = "?";
  if (auto code = vital("sex_code")) {
    sex = std::string(sex_from_code(*code));
  } else if (auto s = in.facts.string("sex")) {
    sex = *s;
  }
  if (sex.empty()) sex = "?";
  std::string age = "?";
  if (auto a = vital("age_years")) {
    age = std::to_string(*a);
  } else if (auto n = in.facts.number("age_years")) {
    age = format_fact(*n);
  }
  auto fact = [&](std::string id, Rect r, std::string text, std::string value) {
    auto e = text_element(std::move(id), r, text, colors::white);
    e.value = std::move(value);
    f.central.push_back(std::move(e));
  };
  fact("fact:name", kTopColumn.inset(2), name, name);
  fact("fact:sex", {107, 187, 106, 24}, "Geschl. " + sex, sex);
  fact("fact:age", {107, 213, 106, 24}, "Alter " + age, age);
  f.side_buttons.push_back(side_button("back", Corner::TopLeft, "Zurück", ColorRole::Red));
}

inline void compose_treatment(FrameState& f, const ComposeInput& in) {
  const auto& s = need_session(in, ScreenId::Treatment);
  const auto view = s.view();
  Element panel;
  panel.id = "panel:steps";
  panel.kind = ElementKind::Panel;
  panel.rect = kMiddleBand;
  panel.fill = palette::panel;
  f.central.push_back(std::move(panel));
  f.central.push_back(title_element(view.path_title));
  if (view.previous) f.central.push_back(text_element("previous", {4, 81, 312, 32}, *view.previous, colors::red));
  f.central.push_back(text_element("current", {4, 115, 312, 36}, view.current, colors::black));
  if (view.next) f.central.push_back(text_element("next", {4, 153, 312, 30}, *view.next, colors::green));
  if (in.timer_text) f.central.push_back(text_element("timer", kBottomColumn.inset(2), *in.timer_text, colors::yellow));

  const auto& node = s.cursor_node();
  const bool can_back = s.history().size() > 1;
  const bool has_info = graph::attached_info(s.graph(), node.id.str()).has_value();
  std::set<Corner> used;
  auto put = [&](ButtonSpec b, Corner c) {
    used.insert(c);
    f.side_buttons.push_back(std::move(b));
  };
  const auto& pending = s.pending();
  if (pending && pending->kind == engine::PendingKind::Prompt) {
    const auto& opts = pending->options;
    for (std::size_t i = 0; i < opts.size() && i < 4; ++i) {
      put(side_button("option:" + std::to_string(i), kOptionCorners[i], opts[i], ColorRole::Neutral),
          kOptionCorners[i]);
    }
    if (opts.size() < 4 && can_back) put(side_button("back", Corner::TopLeft, "Zurück", ColorRole::Red), Corner::TopLeft);
  } else {
    if (can_back) put(side_button("back", Corner::TopLeft, "Zurück", ColorRole::Red), Corner::TopLeft);
    if (node.kind != graph::NodeKind::End) {
      const bool approval = pending && pending->kind == engine::PendingKind::Approval;
      put(side_button("next", Corner::TopRight, approval ? "Prüfen" : "Weiter", ColorRole::Green), Corner::TopRight);
    }
  }
  if (has_info && !used.count(Corner::BottomLeft)) {
    put(side_button("info", Corner::BottomLeft, "Info", ColorRole::Neutral, "info"), Corner::BottomLeft);
  }
  if (!used.count(Corner::BottomRight)) {
    put(side_button("monitor", Corner::BottomRight, "Monitor", ColorRole::Neutral, "cross"), Corner::BottomRight);
  }
}

inline void compose_massive_info(FrameState& f, const ComposeInput& in) {
  const auto& s = need_session(in, ScreenId::MassiveInfo);
  const auto text = graph::attached_info(s.graph(), s.cursor()).value_or("Keine Zusatzinformation");
  static const render::FontCatalog smallest({10});
  Element e;
  e.id = "info";
  e.kind = ElementKind::Text;
  e.rect = kMassiveInfoText;
  e.label = make_label(text, kMassiveInfoText, true, smallest);
  f.central.push_back(std::move(e));
  f.side_buttons.push_back(side_button("back", Corner::BottomRight, "Zurück", ColorRole::Red));
}

inline std::string percent(double p) { return std::to_string(static_cast<int>(p * 100.0 + 0.5)) + "%"; }

inline void compose_situation(FrameState& f, const ComposeInput& in) {
  f.central.push_back(title_element("Situation"));
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < in.detection.size() && i < kListRows; ++i) {
    const auto& r = in.detection[i];
    rows.push_back(std::to_string(i + 1) + ". " + std::string(situation::display_name(r.group)) + " " +
                   percent(r.probability));
  }
  list_rows(f, rows, in.situation_cursor, true, "Keine Vitaldaten");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    f.central[f.central.size() - rows.size() + i].value =
        std::string(situation::group_to_id(in.detection[i].group).code());
  }
  list_buttons(f, !rows.empty());
}

inline void compose_all_treatments(FrameState& f, const ComposeInput& in) {
  f.central.push_back(title_element("Behandlungen"));
  list_rows(f, in.treatment_titles, in.treatment_cursor, true, "Keine Pfade geladen");
  list_buttons(f, !in.treatment_titles.empty());
}

inline void compose_lines(FrameState& f, std::string_view title, const std::vector<std::string>& lines,
                          std::string_view empty_text) {
  f.central.push_back(title_element(title));
  list_rows(f, lines, -1, false, empty_text);
  f.side_buttons.push_back(side_button("back", Corner::TopLeft, "Zurück", ColorRole::Red));
}

inline Modal compose_modal(const ComposeInput& in) {
  Modal m;
  m.kind = in.screen;
  if (in.screen == ScreenId::Approval) {
    const auto& s = need_session(in, ScreenId::Approval);
    const auto& p = s.pending();
    if (!p || p->kind != engine::PendingKind::Approval) throw InconsistentInput("Approval needs a pending approval");
    m.fill = palette::approval;
    m.elements.push_back(text_element("modal:title", kModalTitle, "Bestätigung", colors::white, std::nullopt, false));
    m.elements.push_back(text_element("modal:question", kModalBody, p->question, colors::white));
    m.elements.push_back(text_element("modal:evidence", kModalDetail, p->evidence.value_or(""), colors::yellow));
    ButtonSpec over = make_button("override", ButtonKind::Modal, ui::side_button(Corner::BottomLeft), "Ändern",
                                  ColorRole::Red);
    ButtonSpec ok = make_button("approve", ButtonKind::Modal, ui::side_button(Corner::BottomRight),
                                p->auto_choice.value_or("OK"), ColorRole::Green);
    m.buttons.push_back(std::move(over));
    m.buttons.push_back(std::move(ok));
    return m;
  }
  if (!in.warning) throw InconsistentInput(std::string(to_string(in.screen)) + " needs a warning event");
  const auto& w = *in.warning;
  const bool warning = in.screen == ScreenId::Warning;
  m.code = w.code;
  m.fill = warning ? palette::warning : palette::notification;
  const std::string title = (warning ? "WARNUNG " : "Hinweis ") + std::to_string(w.code);
  m.elements.push_back(text_element("modal:title", kModalTitle, title, colors::white, std::nullopt, false));
  m.elements.push_back(text_element("modal:message", Rect{8, 58, 304, 122}, w.message, colors::white));
  m.buttons.push_back(make_button("dismiss", ButtonKind::Modal, ui::side_button(Corner::BottomRight), "OK",
                                  warning ? ColorRole::Red : ColorRole::Neutral));
  return m;
}

}  // namespace detail

/// Builds the frame for `in.screen`. Modal screens are drawn over `in.base`.
inline FrameState compose(const ComposeInput& in) {
  FrameState f;
  f.screen = in.screen;
  if (is_modal(in.screen)) {
    ComposeInput under = in;
    under.screen = in.base.value_or(ScreenId::Treatment);
    under.base.reset();
    if (is_modal(under.screen)) throw InconsistentInput("modal base must be a regular screen");
    f = compose(under);
    f.screen = in.screen;
    f.base = under.screen;
    f.modal = detail::compose_modal(in);
    return f;
  }
  if (in.screen != ScreenId::MassiveInfo) f.header = detail::compose_header(in);
  switch (in.screen) {
    case ScreenId::MainMenu:
      detail::compose_main_menu(f);
      break;
    case ScreenId::PatientMonitor:
      detail::compose_monitor(f, in);
      break;
    case ScreenId::Treatment:
      detail::compose_treatment(f, in);
      break;
    case ScreenId::MassiveInfo:
      detail::compose_massive_info(f, in);
      break;
    case ScreenId::SituationSelect:
      detail::compose_situation(f, in);
      break;
    case ScreenId::AllTreatments:
      detail::compose_all_treatments(f, in);
      break;
    case ScreenId::Alarms:
      detail::compose_lines(f, "Alarme", in.alarm_lines, "Keine Alarme");
      break;
    case ScreenId::Logging:
      detail::compose_lines(f, "Protokoll", in.log_lines, "Keine Einträge");
      break;
    case ScreenId::Settings:
      detail::compose_lines(f, "Einstellungen", in.settings_lines, "-");
      break;
    default:
      break;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Controller

struct ControllerConfig {
  std::vector<std::shared_ptr<const graph::TreatmentGraph>> graphs;
  std::vector<feed::ThresholdRule> rules = defaults::default_threshold_rules();
  situation::Detector detector = situation::rule_detector(defaults::default_detection_rules());
  const TransitionTable* table = &TransitionTable::standard();
  /// Wall-clock time of day shown at sim time zero, in seconds.
  int clock_start = 8 * 3600;
  int battery_start = 100;
  double battery_drain_per_minute = 1.0;
};

/// Tracks up to five touch points. Only the primary point (the first one
/// down while none was active) produces a press, on its release.
class TouchTracker {
 public:
  /// Returns true when `t` releases the primary point.
  bool feed(const TouchEvent& t) {
    if (t.action == TouchAction::Down) {
      if (active_.count(t.pointer) || active_.size() >= static_cast<std::size_t>(kMaxTouchPoints)) return false;
      if (active_.empty()) primary_ = t.pointer;
      active_.insert(t.pointer);
      return false;
    }
    if (!active_.count(t.pointer)) return active_.empty();  // bare release counts as a tap
    active_.erase(t.pointer);
    return primary_ == t.pointer;
  }

  std::size_t active() const { return active_.size(); }

 private:
  std::set<int> active_;
  int primary_ = -1;
};

/// Consumer role: the only reader of the bus. Drains dynamic slots every
/// frame, owns the treatment session and the current screen, and turns
/// button presses into transitions.
class DisplayController {
 public:
  using Log = std::vector<ojson>;

  DisplayController(bus::BusRegion& bus, ControllerConfig config, PatientFacts facts)
      : bus_(&bus), cfg_(std::move(config)), facts_(std::move(facts)) {
    recompose(SimTime{});
  }

  ScreenId screen() const { return screen_; }
  const FrameState& frame() const { return frame_; }
  const engine::Session* session() const { return session_ ? &*session_ : nullptr; }
  const std::vector<situation::RankedGroup>& detection() const { return detection_; }
  std::optional<situation::IllnessGroup> selected_group() const { return selected_group_; }
  const std::map<std::string, std::int32_t>& vitals() const { return vitals_; }
  const PatientFacts& facts() const { return facts_; }
  std::size_t pending_warnings() const { return queue_.size(); }

  Log take_log() { return std::exchange(log_, {}); }
  const Log& log() const { return log_; }

  void start_session(std::size_t graph_index, SimTime now) {
    if (graph_index >= cfg_.graphs.size()) throw InconsistentInput("no treatment path #" + std::to_string(graph_index));
    treatment_cursor_ = static_cast<int>(graph_index);
    session_.emplace(engine::Session::start(cfg_.graphs[graph_index], facts_, now));
    seen_session_events_ = 0;
    forward_session_events();
  }

  struct Drain {
    std::vector<std::string> updated;
    std::optional<WarningEvent> warning;
    bool detection_ready = false;
  };

  /// Consumes every valid dynamic slot. Vitals are cached for display, a
  /// warning code is queued, and a new situation id triggers detection.
  Drain drain_dynamic(SimTime now) {
    Drain d;
    for (const auto& slot : bus_->map().slots()) {
      const auto value = bus_->consume(slot);
      if (!value) continue;
      if (slot.name == "warning_code") {
        const int code = std::get<std::int32_t>(*value);
        WarningEvent w{code, feed::message_for_code(cfg_.rules, code).value_or("Warnung " + std::to_string(code)),
                       std::nullopt};
        queue_.push_back(w);
        d.warning = w;
      } else if (slot.name == "situation") {
        d.detection_ready = true;
      } else if (const auto* i = std::get_if<std::int32_t>(&*value)) {
        vitals_[slot.name] = *i;
        d.updated.push_back(slot.name);
      }
    }
    if (d.detection_ready) {
      run_detection();
      if (screen_ == ScreenId::SituationSelect) go("detection_ready", ScreenId::SituationSelect, now);
    }
    return d;
  }

  /// One frame: drain the bus, poll the session, raise a queued warning,
  /// recompose.
  const FrameState& tick(SimTime now) {
    drain_dynamic(now);
    if (session_) {
      if (auto t = session_->poll_timer(now)) queue_.push_back(*t);
      if (auto n = session_->take_node_notice()) queue_.push_back(*n);
      forward_session_events();
    }
    raise_warning(now);
    recompose(now);
    return frame_;
  }

  /// Feeds a touch; on a primary release over a button, presses it.
  std::optional<std::string> touch(const TouchEvent& t, SimTime now) {
    if (!kScreen.contains(t.x, t.y)) return std::nullopt;
    if (!touch_.feed(t)) return std::nullopt;
    auto id = hit_test(frame_, t.x, t.y);
    if (id) press(*id, now);
    return id;
  }

  /// Presses an active button of the current frame.
  void press(std::string_view id, SimTime now) {
    if (!frame_.find_button(id)) {
      throw InvalidTransition("button '" + std::string(id) + "' is not on the " + std::string(to_string(screen_)) +
                              " frame");
    }
    emit(now, {{"kind", "press"}, {"button", id}});
    handle(std::string(id), now);
    forward_session_events();
    raise_warning(now);
    recompose(now);
  }

  /// Inputs for compose() reflecting the current state at `now`.
  ComposeInput compose_input(SimTime now) const {
    ComposeInput in;
    in.screen = screen_;
    if (is_modal(screen_)) in.base = base_screen();
    in.session = session();
    in.detection = detection_;
    in.situation_cursor = situation_cursor_;
    for (const auto& g : cfg_.graphs) in.treatment_titles.push_back(g->title());
    in.treatment_cursor = treatment_cursor_;
    in.vitals = vitals_;
    in.facts = facts_;
    const auto secs = static_cast<int>(millis(now) / 1000);
    in.clock = clock_string(cfg_.clock_start + secs);
    in.battery_percent = battery(now);
    in.warning = current_warning_;
    if (session_ && session_->timer_deadline()) {
      const auto left = std::max<std::int64_t>(0, millis(*session_->timer_deadline()) - millis(now)) / 1000;
      char buf[32];
      std::snprintf(buf, sizeof buf, "Timer %02d:%02d", static_cast<int>(left / 60), static_cast<int>(left % 60));
      in.timer_text = buf;
    }
    for (auto it = alarms_.rbegin(); it != alarms_.rend() && in.alarm_lines.size() < kListRows; ++it) {
      in.alarm_lines.push_back(*it);
    }
    if (session_) {
      const auto& ev = session_->events();
      for (auto it = ev.rbegin(); it != ev.rend() && in.log_lines.size() < kListRows; ++it) {
        in.log_lines.push_back(clock_string(cfg_.clock_start + static_cast<int>(millis(it->t) / 1000)) + " " + it->op +
                               " " + it->cursor);
      }
    }
    in.settings_lines = {"Akku " + std::to_string(battery(now)) + "%",
                         "Verbrauch " + format_fact(cfg_.battery_drain_per_minute) + "%/min",
                         "Pfade " + std::to_string(cfg_.graphs.size())};
    return in;
  }

  int battery(SimTime now) const {
    const double drained = cfg_.battery_drain_per_minute * static_cast<double>(millis(now)) / 60000.0;
    return std::clamp(cfg_.battery_start - static_cast<int>(drained), 0, 100);
  }

 private:
  void emit(SimTime now, ojson fields) {
    ojson j;
    j["t"] = millis(now);
    for (auto& [k, v] : fields.items()) j[k] = v;
    log_.push_back(std::move(j));
  }

  void forward_session_events() {
    if (!session_) return;
    const auto& ev = session_->events();
    for (; seen_session_events_ < ev.size(); ++seen_session_events_) {
      const auto& e = ev[seen_session_events_];
      ojson j{{"t", millis(e.t)}, {"kind", "session"}, {"op", e.op}, {"cursor", e.cursor}};
      if (e.label) j["label"] = *e.label;
      log_.push_back(std::move(j));
    }
  }

  ScreenId base_screen() const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (!is_modal(*it)) return *it;
    }
    return ScreenId::Treatment;
  }

  void go(std::string_view event, ScreenId to, SimTime now) {
    emit(now, {{"kind", "transition"}, {"from", to_string(screen_)}, {"event", event}, {"to", to_string(to)}});
    screen_ = to;
  }

  /// Applies the table for `event`, with the guard that Treatment without a
  /// session goes to the path list instead.
  void follow(std::string_view event, SimTime now) {
    std::optional<ScreenId> preempted;
    if (!stack_.empty()) preempted = stack_.back();
    auto to = cfg_.table->transition(screen_, event, preempted);
    const auto rule = cfg_.table->lookup(screen_, event);
    if (rule->to == "@return") stack_.pop_back();
    if (to == ScreenId::Treatment && !session_) to = ScreenId::AllTreatments;
    if (to == ScreenId::SituationSelect && screen_ != ScreenId::SituationSelect) {
      run_detection();
      situation_cursor_ = 0;
    }
    go(event, to, now);
  }

  void maybe_approval(SimTime now) {
    if (screen_ != ScreenId::Treatment || !session_) return;
    const auto& p = session_->pending();
    if (p && p->kind == engine::PendingKind::Approval) follow("approval", now);
  }

  void handle(const std::string& id, SimTime now) {
    const auto before = screen_;
    if (before == ScreenId::Treatment && session_) {
      if (id == "next") {
        session_->advance(now);
        follow(id, now);
        maybe_approval(now);
        return;
      }
      if (id == "back") {
        session_->step_back(now);
        follow(id, now);
        return;
      }
      if (id.rfind("option:", 0) == 0) {
        const auto i = static_cast<std::size_t>(std::stoi(id.substr(7)));
        session_->answer(session_->pending()->options.at(i), now);
        follow(id, now);
        maybe_approval(now);
        return;
      }
    }
    if (before == ScreenId::Approval && session_) {
      if (id == "approve") {
        session_->answer(*session_->pending()->auto_choice, now);
        follow(id, now);
        maybe_approval(now);
        return;
      }
      if (id == "override") {
        session_->override_approval(now);
        follow(id, now);
        return;
      }
    }
    if (id == "up" || id == "down") {
      int& cursor = before == ScreenId::SituationSelect ? situation_cursor_ : treatment_cursor_;
      const int count = before == ScreenId::SituationSelect
                            ? static_cast<int>(std::min<std::size_t>(detection_.size(), kListRows))
                            : static_cast<int>(std::min<std::size_t>(cfg_.graphs.size(), kListRows));
      cursor = std::clamp(cursor + (id == "up" ? -1 : 1), 0, std::max(count - 1, 0));
      follow(id, now);
      return;
    }
    if (id == "accept" && before == ScreenId::SituationSelect) {
      const auto& r = detection_.at(static_cast<std::size_t>(situation_cursor_));
      selected_group_ = r.group;
      emit(now, {{"kind", "situation"}, {"code", situation::group_to_id(r.group).code()}});
      if (!session_ && !cfg_.graphs.empty()) start_session(static_cast<std::size_t>(treatment_cursor_), now);
      follow(id, now);
      return;
    }
    if (id == "accept" && before == ScreenId::AllTreatments) {
      start_session(static_cast<std::size_t>(treatment_cursor_), now);
      follow(id, now);
      maybe_approval(now);
      return;
    }
    follow(id, now);
  }

  void raise_warning(SimTime now) {
    if (queue_.empty() || screen_ == ScreenId::Warning || screen_ == ScreenId::Notification) return;
    const auto w = queue_.front();
    queue_.pop_front();
    const bool is_warning = !w.is_notification();
    alarms_.push_back(clock_string(cfg_.clock_start + static_cast<int>(millis(now) / 1000)) + " " +
                      std::to_string(w.code) + " " + w.message);
    emit(now, {{"kind", is_warning ? "warning" : "notification"}, {"code", w.code}, {"message", w.message}});
    stack_.push_back(screen_);
    current_warning_ = w;
    follow(is_warning ? "warning" : "notification", now);
  }

  void run_detection() {
    detection_.clear();
    static constexpr const char* fields[] = {"spo2", "pulse", "bp_sys", "bp_dia", "resp_rate"};
    VitalsSample s;
    int* slots[] = {&s.spo2, &s.pulse, &s.bp_sys, &s.bp_dia, &s.resp_rate};
    for (int i = 0; i < 5; ++i) {
      auto it = vitals_.find(fields[i]);
      if (it == vitals_.end()) return;
      *slots[i] = it->second;
    }
    if (!cfg_.detector) return;
    detection_ = situation::top_k(cfg_.detector(s), kListRows);
  }

  void recompose(SimTime now) {
    if (screen_ != ScreenId::Warning && screen_ != ScreenId::Notification) current_warning_.reset();
    frame_ = compose(compose_input(now));
  }

  bus::BusRegion* bus_;
  ControllerConfig cfg_;
  PatientFacts facts_;
  std::optional<engine::Session> session_;
  std::size_t seen_session_events_ = 0;
  ScreenId screen_ = ScreenId::MainMenu;
  std::vector<ScreenId> stack_;
  std::deque<WarningEvent> queue_;
  std::optional<WarningEvent> current_warning_;
  std::vector<std::string> alarms_;
  std::map<std::string, std::int32_t> vitals_;
  std::vector<situation::RankedGroup> detection_;
  std::optional<situation::IllnessGroup> selected_group_;
  int situation_cursor_ = 0;
  int treatment_cursor_ = 0;
  TouchTracker touch_;
  FrameState frame_;
  Log log_;
};

}  // namespace wearsim::ui
