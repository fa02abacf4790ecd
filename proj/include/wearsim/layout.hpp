#pragma once

// Fixed geometry of the 320x240 screen: a 24 px header, four 105x55 side
// buttons in the corners, and the central panel made of the band between
// them plus the two columns between the left and right buttons.

#include <array>
#include <string>

namespace wearsim::ui {

struct Rect {
  int x = 0, y = 0, w = 0, h = 0;

  constexpr int right() const { return x + w; }
  constexpr int bottom() const { return y + h; }
  constexpr bool contains(int px, int py) const { return px >= x && py >= y && px < right() && py < bottom(); }
  constexpr bool overlaps(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
  constexpr bool inside(const Rect& o) const {
    return x >= o.x && y >= o.y && right() <= o.right() && bottom() <= o.bottom();
  }
  constexpr Rect inset(int d) const { return {x + d, y + d, w - 2 * d, h - 2 * d}; }
  constexpr int cx() const { return x + w / 2; }
  constexpr int cy() const { return y + h / 2; }

  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr int kWidth = 320;
inline constexpr int kHeight = 240;
inline constexpr Rect kScreen{0, 0, kWidth, kHeight};

inline constexpr int kSideButtonWidth = 105;
inline constexpr int kSideButtonHeight = 55;
inline constexpr int kTileWidth = 64;
inline constexpr int kTileHeight = 92;
inline constexpr int kMinButtonWidth = 55;
inline constexpr int kIconSize = 24;
inline constexpr int kMinIconWidth = 23;
inline constexpr int kLabelInset = 4;

inline constexpr Rect kHeader{0, 0, kWidth, 24};
inline constexpr Rect kHeaderTime{4, 2, 96, 20};
inline constexpr Rect kMenuButton{128, 0, 64, 24};
inline constexpr Rect kBatteryText{246, 2, 44, 20};
inline constexpr Rect kBatteryIcon{294, 0, kIconSize, kIconSize};

enum class Corner { TopLeft, BottomLeft, TopRight, BottomRight };

inline constexpr Rect side_button(Corner c) {
  switch (c) {
    case Corner::TopLeft:
      return {0, 24, kSideButtonWidth, kSideButtonHeight};
    case Corner::BottomLeft:
      return {0, 185, kSideButtonWidth, kSideButtonHeight};
    case Corner::TopRight:
      return {215, 24, kSideButtonWidth, kSideButtonHeight};
    case Corner::BottomRight:
      break;
  }
  return {215, 185, kSideButtonWidth, kSideButtonHeight};
}

inline constexpr Rect kTopColumn{105, 24, 110, 55};
inline constexpr Rect kMiddleBand{0, 79, kWidth, 106};
inline constexpr Rect kBottomColumn{105, 185, 110, 55};

/// Main-menu tile `i` in a 4 x 2 grid below the header.
inline constexpr Rect menu_tile(int i) { return {20 + (i % 4) * (kTileWidth + 8), 32 + (i / 4) * 104, kTileWidth, kTileHeight}; }

/// Rows of the selection lists (situation groups, treatment paths).
inline constexpr int kListRows = 5;
inline constexpr Rect list_row(int i) { return {4, 80 + 21 * i, 312, 20}; }

inline constexpr Rect kMassiveInfoText{4, 4, 312, 178};
inline constexpr Rect kModal{0, 24, kWidth, 216};
inline constexpr Rect kModalTitle{8, 30, 304, 24};
inline constexpr Rect kModalBody{8, 58, 304, 72};
inline constexpr Rect kModalDetail{8, 132, 304, 48};

}  // namespace wearsim::ui
