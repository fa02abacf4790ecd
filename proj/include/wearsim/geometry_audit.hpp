#pragma once

// Checks a composed frame against the button-size and layout rules.

#include <string>
#include <vector>

#include "wearsim/frame_state.hpp"
#include "wearsim/text_renderer.hpp"

namespace wearsim::ui {

namespace detail {

inline std::string describe(const Rect& r) {
  return "(" + std::to_string(r.x) + "," + std::to_string(r.y) + " " + std::to_string(r.w) + "x" +
         std::to_string(r.h) + ")";
}

inline void check_label(const std::string& owner, const Label& l, const Rect& within, std::vector<std::string>& out) {
  if (!l.box.inside(within)) out.push_back(owner + ": label box " + describe(l.box) + " leaves its owner");
  if (l.box.w <= 0 || l.box.h <= 0 || !l.box.inside(kScreen)) {
    out.push_back(owner + ": label box " + describe(l.box) + " is empty or off screen");
    return;
  }
  const auto layout = render::layout_at(l.text, l.size, render::TextBox(l.box.w, l.box.h), l.wrap);
  if (!layout) {
    out.push_back(owner + ": label '" + l.text + "' does not fit at " + std::to_string(l.size) + " px");
  } else if (layout->lines != l.lines) {
    out.push_back(owner + ": label lines differ from the fitted layout");
  }
  if (!render::unsupported_glyphs(l.text).empty()) out.push_back(owner + ": label has unsupported glyphs");
}

inline void check_icon(const std::string& owner, const Rect& r, std::vector<std::string>& out) {
  if (r.w < kMinIconWidth) out.push_back(owner + ": icon narrower than 23 px");
  if (!r.inside(kScreen)) out.push_back(owner + ": icon off screen");
}

inline void check_buttons(const std::vector<const ButtonSpec*>& layer, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const auto& b = *layer[i];
    const auto who = "button '" + b.id + "'";
    if (!b.rect.inside(kScreen)) out.push_back(who + " " + describe(b.rect) + " leaves the screen");
    switch (b.kind) {
      case ButtonKind::Side:
      case ButtonKind::Modal:
        if (b.rect.w != kSideButtonWidth || b.rect.h != kSideButtonHeight) {
          out.push_back(who + " is " + describe(b.rect) + ", side buttons are 105x55");
        }
        break;
      case ButtonKind::Tile:
        if (b.rect.w != kTileWidth) out.push_back(who + " tile is not 64 px wide");
        break;
      case ButtonKind::Header:
        if (b.rect.w < kMinButtonWidth) out.push_back(who + " narrower than 55 px");
        if (!b.rect.inside(kHeader)) out.push_back(who + " leaves the header");
        break;
    }
    if (b.label) check_label(who, *b.label, b.rect, out);
    if (b.icon) {
      check_icon(who, b.icon->rect, out);
      if (!b.icon->rect.inside(b.rect)) out.push_back(who + ": icon leaves the button");
    }
    for (std::size_t j = i + 1; j < layer.size(); ++j) {
      if (b.rect.overlaps(layer[j]->rect)) out.push_back(who + " overlaps button '" + layer[j]->id + "'");
    }
  }
}

inline void check_elements(const std::vector<Element>& elements, std::vector<std::string>& out) {
  for (const auto& e : elements) {
    const auto who = "element '" + e.id + "'";
    if (!e.rect.inside(kScreen)) out.push_back(who + " " + describe(e.rect) + " leaves the screen");
    if (e.label) check_label(who, *e.label, e.rect, out);
    if (e.kind == ElementKind::Icon) check_icon(who, e.rect, out);
    if ((e.kind == ElementKind::Text || e.kind == ElementKind::Vitals) && !e.label) {
      out.push_back(who + " has no label");
    }
  }
}

}  // namespace detail

/// Every rule violation of `frame`; empty when the frame is sound.
inline std::vector<std::string> audit(const FrameState& frame) {
  std::vector<std::string> out;
  const auto base = frame.base.value_or(frame.screen);
  if (is_modal(frame.screen) != frame.modal.has_value()) out.push_back("modal presence does not match screen");
  if (frame.modal && frame.modal->kind != frame.screen) out.push_back("modal kind does not match screen");
  if (frame.base && !is_modal(frame.screen)) out.push_back("base screen set on a non-modal screen");
  if (frame.base && is_modal(*frame.base)) out.push_back("base screen is modal");

  if (base == ScreenId::MassiveInfo) {
    if (frame.header) out.push_back("MassiveInfo carries a header");
    if (frame.side_buttons.size() != 1) out.push_back("MassiveInfo must have exactly one button");
  } else if (!frame.header) {
    out.push_back("header missing");
  }
  if (frame.side_buttons.size() > 4) out.push_back("more than four side buttons");
  for (const auto& b : frame.side_buttons) {
    bool corner = false;
    for (auto c : {Corner::TopLeft, Corner::BottomLeft, Corner::TopRight, Corner::BottomRight}) {
      corner = corner || b.rect == side_button(c);
    }
    if (!corner) out.push_back("side button '" + b.id + "' is not in a corner panel");
  }

  std::vector<const ButtonSpec*> base_layer;
  if (frame.header) {
    base_layer.push_back(&frame.header->menu);
    detail::check_elements(frame.header->elements, out);
    for (const auto& e : frame.header->elements) {
      if (!e.rect.inside(kHeader)) out.push_back("header element '" + e.id + "' leaves the header");
    }
  }
  for (const auto& b : frame.side_buttons) base_layer.push_back(&b);
  for (const auto& b : frame.tiles) base_layer.push_back(&b);
  detail::check_buttons(base_layer, out);
  detail::check_elements(frame.central, out);

  if (frame.modal) {
    std::vector<const ButtonSpec*> modal_layer;
    for (const auto& b : frame.modal->buttons) {
      modal_layer.push_back(&b);
      if (!b.rect.inside(frame.modal->rect)) out.push_back("modal button '" + b.id + "' leaves the modal");
    }
    if (modal_layer.empty()) out.push_back("modal without buttons");
    detail::check_buttons(modal_layer, out);
    detail::check_elements(frame.modal->elements, out);
    if (!frame.modal->rect.inside(kScreen)) out.push_back("modal leaves the screen");
  }
  return out;
}

}  // namespace wearsim::ui
