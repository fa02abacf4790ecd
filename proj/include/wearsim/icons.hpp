#pragma once

// 24x24 procedural icons for buttons, tiles and the header.

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "wearsim/error.hpp"
#include "wearsim/image.hpp"

namespace wearsim::render {

inline constexpr int kIconPx = 24;

inline constexpr std::array<std::string_view, 15> kIconNames{
    "info", "cross", "up",   "down", "back",   "next", "check", "battery",
    "warning", "list", "graph", "bell", "gear", "search", "heart"};

namespace detail {

struct Canvas {
  Image& img;
  Rgb ink;

  void dot(int x, int y) {
    if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.set(x, y, ink);
  }
  void box(int x, int y, int w, int h) {
    for (int j = y; j < y + h; ++j)
      for (int i = x; i < x + w; ++i) dot(i, j);
  }
  void frame(int x, int y, int w, int h, int t = 2) {
    box(x, y, w, t);
    box(x, y + h - t, w, t);
    box(x, y, t, h);
    box(x + w - t, y, t, h);
  }
  void disc(double cx, double cy, double r) {
    for (int j = 0; j < img.height; ++j)
      for (int i = 0; i < img.width; ++i) {
        const double dx = i + 0.5 - cx, dy = j + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) dot(i, j);
      }
  }
  void ring(double cx, double cy, double r, double t) {
    for (int j = 0; j < img.height; ++j)
      for (int i = 0; i < img.width; ++i) {
        const double d = std::hypot(i + 0.5 - cx, j + 0.5 - cy);
        if (d <= r && d >= r - t) dot(i, j);
      }
  }
  /// Thick segment from (x0, y0) to (x1, y1).
  void line(double x0, double y0, double x1, double y1, double t = 2.0) {
    const double dx = x1 - x0, dy = y1 - y0, len2 = dx * dx + dy * dy;
    for (int j = 0; j < img.height; ++j)
      for (int i = 0; i < img.width; ++i) {
        const double px = i + 0.5, py = j + 0.5;
        double u = len2 > 0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
        u = u < 0 ? 0 : (u > 1 ? 1 : u);
        const double qx = x0 + u * dx - px, qy = y0 + u * dy - py;
        if (qx * qx + qy * qy <= t * t / 4.0) dot(i, j);
      }
  }
  void triangle(double ax, double ay, double bx, double by, double cx, double cy) {
    auto edge = [](double x0, double y0, double x1, double y1, double px, double py) {
      return (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0);
    };
    for (int j = 0; j < img.height; ++j)
      for (int i = 0; i < img.width; ++i) {
        const double px = i + 0.5, py = j + 0.5;
        const double e0 = edge(ax, ay, bx, by, px, py), e1 = edge(bx, by, cx, cy, px, py),
                     e2 = edge(cx, cy, ax, ay, px, py);
        if ((e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0)) dot(i, j);
      }
  }
};

}  // namespace detail

inline bool is_icon(std::string_view name) {
  for (auto n : kIconNames) {
    if (n == name) return true;
  }
  return false;
}

/// Draws icon `name` in `ink` on `background`.
inline Image render_icon(std::string_view name, Rgb ink = colors::white, Rgb background = colors::black) {
  Image img(kIconPx, kIconPx, background);
  detail::Canvas c{img, ink};
  if (name == "info") {
    c.ring(12, 12, 11, 2);
    c.box(11, 6, 3, 3);
    c.box(11, 10, 3, 9);
  } else if (name == "cross") {
    c.box(9, 3, 6, 18);
    c.box(3, 9, 18, 6);
  } else if (name == "up") {
    c.triangle(12, 3, 3, 15, 21, 15);
    c.box(9, 15, 6, 6);
  } else if (name == "down") {
    c.triangle(12, 21, 3, 9, 21, 9);
    c.box(9, 3, 6, 6);
  } else if (name == "back") {
    c.triangle(3, 12, 13, 3, 13, 21);
    c.box(13, 9, 8, 6);
  } else if (name == "next") {
    c.triangle(21, 12, 11, 3, 11, 21);
    c.box(3, 9, 8, 6);
  } else if (name == "check") {
    c.line(4, 13, 10, 19, 3);
    c.line(10, 19, 20, 5, 3);
  } else if (name == "battery") {
    c.frame(2, 7, 18, 10);
    c.box(20, 10, 2, 4);
    c.box(4, 9, 14, 6);
  } else if (name == "warning") {
    c.triangle(12, 2, 1, 22, 23, 22);
    detail::Canvas hole{img, background};
    hole.box(11, 9, 2, 7);
    hole.box(11, 18, 2, 2);
  } else if (name == "list") {
    for (int r = 0; r < 4; ++r) {
      c.box(3, 4 + 5 * r, 3, 3);
      c.box(8, 4 + 5 * r, 13, 3);
    }
  } else if (name == "graph") {
    c.line(6, 5, 6, 19, 2);
    c.line(6, 12, 18, 6, 2);
    c.line(6, 12, 18, 18, 2);
    c.disc(6, 5, 3);
    c.disc(6, 19, 3);
    c.disc(18, 6, 3);
    c.disc(18, 18, 3);
  } else if (name == "bell") {
    c.disc(12, 11, 7);
    c.box(5, 11, 14, 6);
    c.box(3, 16, 18, 2);
    c.disc(12, 20, 2);
  } else if (name == "gear") {
    c.disc(12, 12, 7);
    for (int k = 0; k < 8; ++k) {
      const double a = k * 3.14159265358979 / 4;
      c.disc(12 + 9 * std::cos(a), 12 + 9 * std::sin(a), 2.2);
    }
    detail::Canvas hole{img, background};
    hole.disc(12, 12, 3);
  } else if (name == "search") {
    c.ring(10, 10, 7, 2.5);
    c.line(15, 15, 21, 21, 3);
  } else if (name == "heart") {
    c.disc(8, 9, 5);
    c.disc(16, 9, 5);
    c.triangle(3.5, 11, 20.5, 11, 12, 21);
  } else {
    throw InconsistentInput("unknown icon '" + std::string(name) + "'");
  }
  return img;
}

}  // namespace wearsim::render
