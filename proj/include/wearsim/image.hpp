#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wearsim/error.hpp"

namespace wearsim {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace colors {
inline constexpr Rgb black{0, 0, 0};
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb red{220, 30, 30};
inline constexpr Rgb green{20, 160, 60};
inline constexpr Rgb grey{110, 110, 110};
inline constexpr Rgb yellow{240, 200, 0};
inline constexpr Rgb blue{40, 90, 200};
}  // namespace colors

/// Accepts a palette name (white, black, red, green, grey, yellow, blue) or
/// `#rrggbb`.
inline std::optional<Rgb> parse_color(std::string_view s) {
  struct Named {
    std::string_view name;
    Rgb rgb;
  };
  static constexpr Named named[] = {{"white", colors::white}, {"black", colors::black},   {"red", colors::red},
                                    {"green", colors::green}, {"grey", colors::grey},     {"yellow", colors::yellow},
                                    {"blue", colors::blue}};
  for (const auto& n : named) {
    if (n.name == s) return n.rgb;
  }
  if (s.size() == 7 && s[0] == '#') {
    auto hex = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return -1;
    };
    int v[6];
    for (int i = 0; i < 6; ++i) {
      v[i] = hex(s[1 + i]);
      if (v[i] < 0) return std::nullopt;
    }
    return Rgb{static_cast<std::uint8_t>(v[0] * 16 + v[1]), static_cast<std::uint8_t>(v[2] * 16 + v[3]),
               static_cast<std::uint8_t>(v[4] * 16 + v[5])};
  }
  return std::nullopt;
}

inline std::string to_hex(Rgb c) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = "#";
  for (auto v : {c.r, c.g, c.b}) {
    out.push_back(digits[v >> 4]);
    out.push_back(digits[v & 15]);
  }
  return out;
}

/// Row-major RGB raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, Rgb fill = colors::black) : width(w), height(h), pixels(static_cast<std::size_t>(w * h) * 3) {
    for (int i = 0; i < w * h; ++i) set_index(i, fill);
  }

  Rgb at(int x, int y) const {
    const auto i = static_cast<std::size_t>(y * width + x) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  void set(int x, int y, Rgb c) { set_index(y * width + x, c); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  void set_index(int i, Rgb c) {
    const auto k = static_cast<std::size_t>(i) * 3;
    pixels[k] = c.r;
    pixels[k + 1] = c.g;
    pixels[k + 2] = c.b;
  }
};

/// Binary PPM (P6, maxval 255).
inline std::string to_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

inline Image from_ppm(std::string_view data) {
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (data[pos] == ' ' || data[pos] == '\n' || data[pos] == '\r' || data[pos] == '\t') {
        ++pos;
      } else {
        break;
      }
    }
    const auto start = pos;
    while (pos < data.size() && data[pos] != ' ' && data[pos] != '\n' && data[pos] != '\r' && data[pos] != '\t') ++pos;
    return std::string(data.substr(start, pos - start));
  };
  if (token() != "P6") throw ParseError("not a binary PPM");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw ParseError("malformed PPM header");
  }
  if (w <= 0 || h <= 0 || maxval != 255) throw ParseError("unsupported PPM geometry");
  ++pos;
  const auto n = static_cast<std::size_t>(w * h) * 3;
  if (data.size() - pos < n) throw ParseError("truncated PPM raster");
  Image img;
  img.width = w;
  img.height = h;
  img.pixels.assign(data.begin() + static_cast<std::ptrdiff_t>(pos),
                    data.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return img;
}

}  // namespace wearsim
