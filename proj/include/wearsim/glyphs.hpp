#pragma once

// Bitmap glyph set: 5x10 shapes in a 6x10 cell, loaded from the embedded
// glyph file (data/font/glyphs-6x10.txt).

#include <array>
#include <bitset>
#include <map>
#include <string>
#include <string_view>

#include "wearsim/default_data.hpp"
#include "wearsim/error.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::render {

inline constexpr int kCellWidth = 6;
inline constexpr int kCellHeight = 10;
inline constexpr int kGlyphWidth = 5;

/// One bit per pixel, row-major, top row first.
using GlyphBits = std::bitset<kGlyphWidth * kCellHeight>;

class BitmapFont {
 public:
  /// Parses the glyph file: a `U+XXXX` line followed by ten rows of five
  /// '.'/'#' characters. `#` comments and blank lines are ignored.
  static BitmapFont parse(std::string_view doc) {
    BitmapFont font;
    const auto lines = text::lines(doc);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto line = text::trim(lines[i]);
      if (line.empty() || line.front() == '#') continue;
      if (line.size() < 3 || line.substr(0, 2) != "U+") {
        throw ParseError("glyph file line " + std::to_string(i + 1) + ": expected U+XXXX");
      }
      unsigned long cp = 0;
      try {
        cp = std::stoul(std::string(line.substr(2)), nullptr, 16);
      } catch (const std::exception&) {
        throw ParseError("glyph file line " + std::to_string(i + 1) + ": bad code point");
      }
      GlyphBits bits;
      for (int row = 0; row < kCellHeight; ++row) {
        const auto at = i + 1 + static_cast<std::size_t>(row);
        if (at >= lines.size()) throw ParseError("glyph U+" + std::string(line.substr(2)) + " is truncated");
        const auto r = text::trim(lines[at]);
        if (r.size() != kGlyphWidth) {
          throw ParseError("glyph file line " + std::to_string(at + 1) + ": expected 5 columns");
        }
        for (int col = 0; col < kGlyphWidth; ++col) {
          if (r[col] == '#') {
            bits.set(static_cast<std::size_t>(row * kGlyphWidth + col));
          } else if (r[col] != '.') {
            throw ParseError("glyph file line " + std::to_string(at + 1) + ": unexpected '" + r[col] + "'");
          }
        }
      }
      if (!font.glyphs_.emplace(static_cast<char32_t>(cp), bits).second) {
        throw ParseError("glyph U+" + std::string(line.substr(2)) + " defined twice");
      }
      i += kCellHeight;
    }
    return font;
  }

  bool has(char32_t cp) const { return glyphs_.count(cp) != 0; }

  const GlyphBits& glyph(char32_t cp) const { return glyphs_.at(cp); }

  bool pixel(char32_t cp, int col, int row) const {
    if (col >= kGlyphWidth) return false;
    return glyph(cp).test(static_cast<std::size_t>(row * kGlyphWidth + col));
  }

  const std::map<char32_t, GlyphBits>& glyphs() const { return glyphs_; }

 private:
  std::map<char32_t, GlyphBits> glyphs_;
};

inline const BitmapFont& default_font() {
  static const BitmapFont font = BitmapFont::parse(defaults::font);
  return font;
}

}  // namespace wearsim::render
