#pragma once

// Declarative description of one display frame, as produced by the display
// controller and sent over the wire.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wearsim/digest.hpp"
#include "wearsim/error.hpp"
#include "wearsim/image.hpp"
#include "wearsim/layout.hpp"

namespace wearsim::ui {

enum class ScreenId {
  MainMenu,
  PatientMonitor,
  Treatment,
  SituationSelect,
  Warning,
  Notification,
  Approval,
  MassiveInfo,
  AllTreatments,
  Alarms,
  Logging,
  Settings,
};

inline constexpr std::array<ScreenId, 12> kAllScreens{
    ScreenId::MainMenu,     ScreenId::PatientMonitor, ScreenId::Treatment,   ScreenId::SituationSelect,
    ScreenId::Warning,      ScreenId::Notification,   ScreenId::Approval,    ScreenId::MassiveInfo,
    ScreenId::AllTreatments, ScreenId::Alarms,        ScreenId::Logging,     ScreenId::Settings,
};

inline constexpr std::string_view to_string(ScreenId s) {
  constexpr std::array<std::string_view, 12> names{
      "MainMenu",    "PatientMonitor", "Treatment",     "SituationSelect", "Warning", "Notification",
      "Approval",    "MassiveInfo",    "AllTreatments", "Alarms",          "Logging", "Settings"};
  return names[static_cast<std::size_t>(s)];
}

inline std::optional<ScreenId> parse_screen(std::string_view s) {
  for (auto id : kAllScreens) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

inline constexpr bool is_modal(ScreenId s) {
  return s == ScreenId::Warning || s == ScreenId::Notification || s == ScreenId::Approval;
}

enum class ButtonKind { Side, Tile, Header, Modal };
enum class ColorRole { Neutral, Green, Red };

inline constexpr std::string_view to_string(ButtonKind k) {
  switch (k) {
    case ButtonKind::Side:
      return "side";
    case ButtonKind::Tile:
      return "tile";
    case ButtonKind::Header:
      return "header";
    case ButtonKind::Modal:
      break;
  }
  return "modal";
}

inline constexpr std::string_view to_string(ColorRole r) {
  switch (r) {
    case ColorRole::Neutral:
      return "neutral";
    case ColorRole::Green:
      return "green";
    case ColorRole::Red:
      break;
  }
  return "red";
}

/// Text already fitted to `box`: `text` is what is shown (possibly cut
/// back), `lines` the wrapped lines at `size`.
struct Label {
  std::string text;
  Rect box;
  int size = 10;
  bool wrap = true;
  std::vector<std::string> lines;

  friend bool operator==(const Label&, const Label&) = default;
};

struct IconRef {
  std::string name;
  Rect rect;

  friend bool operator==(const IconRef&, const IconRef&) = default;
};

struct ButtonSpec {
  std::string id;
  ButtonKind kind = ButtonKind::Side;
  Rect rect;
  ColorRole role = ColorRole::Neutral;
  std::optional<Label> label;
  std::optional<IconRef> icon;
  std::optional<Rgb> fill;

  friend bool operator==(const ButtonSpec&, const ButtonSpec&) = default;
};

enum class ElementKind { Panel, Text, Icon, Vitals };

inline constexpr std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::Panel:
      return "panel";
    case ElementKind::Text:
      return "text";
    case ElementKind::Icon:
      return "icon";
    case ElementKind::Vitals:
      break;
  }
  return "vitals";
}

/// Positioned central-panel content. Panels only fill; text and vitals carry
/// a fitted label; icons name an icon drawn into `rect`.
struct Element {
  std::string id;
  ElementKind kind = ElementKind::Text;
  Rect rect;
  Rgb color = colors::white;
  std::optional<Rgb> fill;
  std::optional<Label> label;
  std::optional<std::string> icon;
  std::optional<std::string> value;

  friend bool operator==(const Element&, const Element&) = default;
};

struct Header {
  std::string time;
  int battery_percent = 100;
  ButtonSpec menu;
  std::vector<Element> elements;

  friend bool operator==(const Header&, const Header&) = default;
};

struct Modal {
  ScreenId kind = ScreenId::Warning;
  std::optional<int> code;
  Rect rect = kModal;
  Rgb fill = colors::red;
  std::vector<Element> elements;
  std::vector<ButtonSpec> buttons;

  friend bool operator==(const Modal&, const Modal&) = default;
};

struct FrameState {
  ScreenId screen = ScreenId::MainMenu;
  /// Screen underneath when `screen` is modal.
  std::optional<ScreenId> base;
  std::optional<Header> header;
  std::vector<ButtonSpec> side_buttons;
  std::vector<ButtonSpec> tiles;
  std::vector<Element> central;
  std::optional<Modal> modal;

  const Element* find_element(std::string_view id) const {
    for (const auto& e : central) {
      if (e.id == id) return &e;
    }
    if (modal) {
      for (const auto& e : modal->elements) {
        if (e.id == id) return &e;
      }
    }
    return nullptr;
  }

  /// Buttons the user can currently press: the modal's when one is open,
  /// otherwise header, side buttons and tiles.
  std::vector<const ButtonSpec*> active_buttons() const {
    std::vector<const ButtonSpec*> out;
    if (modal) {
      for (const auto& b : modal->buttons) out.push_back(&b);
      return out;
    }
    if (header) out.push_back(&header->menu);
    for (const auto& b : side_buttons) out.push_back(&b);
    for (const auto& b : tiles) out.push_back(&b);
    return out;
  }

  const ButtonSpec* find_button(std::string_view id) const {
    for (const auto* b : active_buttons()) {
      if (b->id == id) return b;
    }
    return nullptr;
  }

  friend bool operator==(const FrameState&, const FrameState&) = default;
};

enum class TouchAction { Down, Up };

struct TouchEvent {
  int x = 0;
  int y = 0;
  TouchAction action = TouchAction::Up;
  int pointer = 0;

  friend bool operator==(const TouchEvent&, const TouchEvent&) = default;
};

inline constexpr int kMaxTouchPoints = 5;

/// Id of the button under (x, y) among the active buttons, if any.
inline std::optional<std::string> hit_test(const FrameState& frame, int x, int y) {
  for (const auto* b : frame.active_buttons()) {
    if (b->rect.contains(x, y)) return b->id;
  }
  return std::nullopt;
}

inline std::optional<std::string> hit_test(const FrameState& frame, const TouchEvent& touch) {
  if (touch.action != TouchAction::Up) return std::nullopt;
  return hit_test(frame, touch.x, touch.y);
}

// ---------------------------------------------------------------------------
// JSON

using ojson = nlohmann::ordered_json;

inline ojson to_json(const Rect& r) { return ojson::array({r.x, r.y, r.w, r.h}); }

inline ojson to_json(const Label& l) {
  return ojson{{"text", l.text}, {"box", to_json(l.box)}, {"size", l.size}, {"wrap", l.wrap}, {"lines", l.lines}};
}

inline ojson to_json(const ButtonSpec& b) {
  ojson j{{"id", b.id}, {"kind", to_string(b.kind)}, {"rect", to_json(b.rect)}, {"role", to_string(b.role)}};
  if (b.label) j["label"] = to_json(*b.label);
  if (b.icon) j["icon"] = ojson{{"name", b.icon->name}, {"rect", to_json(b.icon->rect)}};
  if (b.fill) j["fill"] = to_hex(*b.fill);
  return j;
}

inline ojson to_json(const Element& e) {
  ojson j{{"id", e.id}, {"kind", to_string(e.kind)}, {"rect", to_json(e.rect)}, {"color", to_hex(e.color)}};
  if (e.fill) j["fill"] = to_hex(*e.fill);
  if (e.label) j["label"] = to_json(*e.label);
  if (e.icon) j["icon"] = *e.icon;
  if (e.value) j["value"] = *e.value;
  return j;
}

template <typename T>
ojson to_json_array(const std::vector<T>& items) {
  ojson a = ojson::array();
  for (const auto& i : items) a.push_back(to_json(i));
  return a;
}

inline ojson to_json(const FrameState& f) {
  ojson j;
  j["screen"] = to_string(f.screen);
  j["base"] = f.base ? ojson(to_string(*f.base)) : ojson(nullptr);
  if (f.header) {
    j["header"] = ojson{{"time", f.header->time},
                        {"battery", f.header->battery_percent},
                        {"menu", to_json(f.header->menu)},
                        {"elements", to_json_array(f.header->elements)}};
  } else {
    j["header"] = nullptr;
  }
  j["side_buttons"] = to_json_array(f.side_buttons);
  j["tiles"] = to_json_array(f.tiles);
  j["central"] = to_json_array(f.central);
  if (f.modal) {
    ojson m{{"kind", to_string(f.modal->kind)},
            {"code", f.modal->code ? ojson(*f.modal->code) : ojson(nullptr)},
            {"rect", to_json(f.modal->rect)},
            {"fill", to_hex(f.modal->fill)},
            {"elements", to_json_array(f.modal->elements)},
            {"buttons", to_json_array(f.modal->buttons)}};
    j["modal"] = std::move(m);
  } else {
    j["modal"] = nullptr;
  }
  return j;
}

/// SHA-256 over the compact JSON form; equal frames give equal digests.
inline std::string digest(const FrameState& f) { return sha256_hex(to_json(f).dump()); }

inline ojson to_json(const TouchEvent& t) {
  return ojson{{"x", t.x}, {"y", t.y}, {"action", t.action == TouchAction::Down ? "down" : "up"}, {"pointer", t.pointer}};
}

inline TouchEvent touch_from_json(const nlohmann::json& j) {
  try {
    TouchEvent t;
    t.x = j.at("x").get<int>();
    t.y = j.at("y").get<int>();
    const auto action = j.at("action").get<std::string>();
    if (action == "down") {
      t.action = TouchAction::Down;
    } else if (action == "up") {
      t.action = TouchAction::Up;
    } else {
      throw ParseError("touch action must be 'down' or 'up'");
    }
    t.pointer = j.value("pointer", 0);
    if (!kScreen.contains(t.x, t.y)) throw ParseError("touch outside 320x240");
    if (t.pointer < 0 || t.pointer >= kMaxTouchPoints) throw ParseError("touch pointer must be 0..4");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed touch: ") + e.what());
  }
}

}  // namespace wearsim::ui
