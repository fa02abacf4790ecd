#pragma once

// Font-size fitting and bitmap text rendering for the 320x240 display.
//
// Metrics follow a monospace model: a glyph at pixel height `size` advances
// ceil(0.6 * size) px and lines are size + 2 px apart. A block of n lines is
// (n - 1) * (size + 2) + size px tall.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wearsim/error.hpp"
#include "wearsim/glyphs.hpp"
#include "wearsim/image.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::render {

inline constexpr int kScreenWidth = 320;
inline constexpr int kScreenHeight = 240;

class FontCatalog {
 public:
  explicit FontCatalog(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw ConfigError("font catalog is empty");
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (sizes_[i] <= 0) throw ConfigError("font sizes must be positive");
      if (i > 0 && sizes_[i] <= sizes_[i - 1]) throw ConfigError("font sizes must be strictly increasing");
    }
    if (!contains(10)) throw ConfigError("font catalog must contain the 10 px base size");
  }

  static const FontCatalog& standard() {
    static const FontCatalog catalog({10, 14, 18, 24});
    return catalog;
  }

  const std::vector<int>& sizes() const { return sizes_; }
  int smallest() const { return sizes_.front(); }
  bool contains(int size) const { return std::find(sizes_.begin(), sizes_.end(), size) != sizes_.end(); }

  static constexpr int advance(int size) { return (6 * size + 9) / 10; }
  static constexpr int line_height(int size) { return size + 2; }
  static constexpr int block_height(int size, int lines) {
    return lines <= 0 ? 0 : (lines - 1) * line_height(size) + size;
  }

 private:
  std::vector<int> sizes_;
};

struct TextBox {
  int width = 0;
  int height = 0;

  TextBox() = default;
  TextBox(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0 || w > kScreenWidth || h > kScreenHeight) {
      throw InconsistentInput("text box " + std::to_string(w) + "x" + std::to_string(h) + " outside 1..320 x 1..240");
    }
  }

  friend bool operator==(const TextBox&, const TextBox&) = default;
};

/// Outcome of fitting: the chosen size, the lines, and the code-point offset
/// at which each line after the first begins in the source text.
struct TextLayout {
  int size = 0;
  std::vector<std::string> lines;
  std::vector<std::size_t> breaks;

  int width() const {
    std::size_t longest = 0;
    for (const auto& l : lines) longest = std::max(longest, text::length_utf8(l));
    return static_cast<int>(longest) * FontCatalog::advance(size);
  }
  int height() const { return FontCatalog::block_height(size, static_cast<int>(lines.size())); }

  friend bool operator==(const TextLayout&, const TextLayout&) = default;
};

namespace detail {

inline bool is_space(char32_t c) { return c == U' ' || c == U'\t'; }

/// Greedy word wrap at `max_chars` per line; '\n' forces a break. Words are
/// split only after a hyphen. Empty result when a piece is longer than a line.
inline std::optional<TextLayout> wrap_greedy(const std::u32string& s, int max_chars) {
  TextLayout out;
  if (max_chars <= 0) return std::nullopt;
  const auto limit = static_cast<std::size_t>(max_chars);
  std::size_t para_start = 0;
  while (true) {
    const auto nl = s.find(U'\n', para_start);
    const auto para_end = nl == std::u32string::npos ? s.size() : nl;
    std::u32string line;
    std::size_t line_start = para_start;
    bool first_line = true;
    auto emit = [&] {
      if (!out.lines.empty()) out.breaks.push_back(line_start);
      out.lines.push_back(text::encode_utf8(line));
      line.clear();
      first_line = false;
    };
    std::size_t i = para_start;
    bool glued = false;
    while (i < para_end) {
      if (!glued) {
        while (i < para_end && is_space(s[i])) ++i;
        if (i >= para_end) break;
      }
      // A piece runs to the next space or just past a hyphen; the piece
      // after a hyphen continues the same word.
      const auto word_start = i;
      const bool joins = glued;
      while (i < para_end && !is_space(s[i])) {
        if (s[i++] == U'-' && i < para_end && !is_space(s[i])) break;
      }
      glued = i < para_end && !is_space(s[i]);
      const auto len = i - word_start;
      if (len > limit) return std::nullopt;
      const std::size_t sep = joins ? 0 : 1;
      if (line.empty()) {
        line_start = word_start;
        line = s.substr(word_start, len);
      } else if (line.size() + sep + len <= limit) {
        if (!joins) line += U' ';
        line += s.substr(word_start, len);
      } else {
        emit();
        line_start = word_start;
        line = s.substr(word_start, len);
      }
    }
    if (!line.empty() || first_line) emit();
    if (nl == std::u32string::npos) break;
    para_start = nl + 1;
  }
  return out;
}

/// Lines split only at '\n'; spaces are kept as written.
inline TextLayout split_hard(const std::u32string& s) {
  TextLayout out;
  std::size_t start = 0;
  while (true) {
    const auto nl = s.find(U'\n', start);
    const auto end = nl == std::u32string::npos ? s.size() : nl;
    if (!out.lines.empty()) out.breaks.push_back(start);
    out.lines.push_back(text::encode_utf8(s.substr(start, end - start)));
    if (nl == std::u32string::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace detail

/// Layout of `text` at one size, if it fits `box`.
inline std::optional<TextLayout> layout_at(std::string_view text, int size, TextBox box, bool wrap) {
  const auto cps = text::decode_utf8(text);
  const int adv = FontCatalog::advance(size);
  std::optional<TextLayout> layout;
  if (wrap) {
    layout = detail::wrap_greedy(cps, box.width / adv);
  } else {
    layout = detail::split_hard(cps);
  }
  if (!layout) return std::nullopt;
  layout->size = size;
  if (layout->width() > box.width || layout->height() > box.height) return std::nullopt;
  return layout;
}

/// Largest catalog size at which `text` fits `box`.
inline TextLayout fit_font_size(std::string_view text, TextBox box, const FontCatalog& catalog = FontCatalog::standard(),
                                bool wrap = false) {
  if (text.empty()) throw EmptyText("cannot fit empty text");
  const auto& sizes = catalog.sizes();
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
    if (auto layout = layout_at(text, *it, box, wrap)) return *layout;
  }
  throw DoesNotFit("'" + std::string(text) + "' does not fit " + std::to_string(box.width) + "x" +
                   std::to_string(box.height) + " even at " + std::to_string(catalog.smallest()) + " px");
}

/// Fitted label that never fails: text that does not fit even at the
/// smallest size is cut back and ends in "...".
struct FittedLabel {
  std::string text;
  TextLayout layout;
  bool truncated = false;

  friend bool operator==(const FittedLabel&, const FittedLabel&) = default;
};

inline FittedLabel fit_label(std::string_view text, TextBox box, const FontCatalog& catalog = FontCatalog::standard(),
                             bool wrap = true) {
  try {
    return {std::string(text), fit_font_size(text, box, catalog, wrap), false};
  } catch (const DoesNotFit&) {
  }
  auto cps = text::decode_utf8(text);
  while (!cps.empty()) {
    cps.pop_back();
    while (!cps.empty() && (detail::is_space(cps.back()) || cps.back() == U'\n')) cps.pop_back();
    const auto candidate = text::encode_utf8(cps) + "...";
    if (auto layout = layout_at(candidate, catalog.smallest(), box, wrap)) return {candidate, *layout, true};
  }
  if (auto layout = layout_at("...", catalog.smallest(), box, wrap)) return {"...", *layout, true};
  throw DoesNotFit("box " + std::to_string(box.width) + "x" + std::to_string(box.height) + " cannot hold any text");
}

struct RenderedAsset {
  std::string text;
  int size = 0;
  Rgb color;
  Image image;

  int width() const { return image.width; }
  int height() const { return image.height; }

  friend bool operator==(const RenderedAsset&, const RenderedAsset&) = default;
};

/// Code points of `text` the glyph set cannot draw, in first-seen order.
inline std::vector<char32_t> unsupported_glyphs(std::string_view text, const BitmapFont& font = default_font()) {
  std::vector<char32_t> bad;
  for (char32_t cp : text::decode_utf8(text)) {
    if (cp == U'\n' || font.has(cp)) continue;
    if (std::find(bad.begin(), bad.end(), cp) == bad.end()) bad.push_back(cp);
  }
  return bad;
}

/// Draws the glyph cell of `cp` scaled to `size` with its top-left at (x, y).
inline void draw_glyph(Image& img, char32_t cp, int x, int y, int size, Rgb color,
                       const BitmapFont& font = default_font()) {
  const int adv = FontCatalog::advance(size);
  for (int py = 0; py < size; ++py) {
    const int row = py * kCellHeight / size;
    for (int px = 0; px < adv; ++px) {
      const int col = px * kCellWidth / adv;
      if (!font.pixel(cp, col, row)) continue;
      const int tx = x + px, ty = y + py;
      if (tx >= 0 && ty >= 0 && tx < img.width && ty < img.height) img.set(tx, ty, color);
    }
  }
}

inline Image render_lines(const std::vector<std::string>& lines, int size, Rgb color, Rgb background = colors::black,
                          const BitmapFont& font = default_font()) {
  TextLayout probe{size, lines, {}};
  Image img(std::max(probe.width(), 1), std::max(probe.height(), 1), background);
  const int adv = FontCatalog::advance(size);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    int x = 0;
    for (char32_t cp : text::decode_utf8(lines[l])) {
      draw_glyph(img, cp, x, static_cast<int>(l) * FontCatalog::line_height(size), size, color, font);
      x += adv;
    }
  }
  return img;
}

/// Renders `text` (lines split at '\n') at `size`.
inline RenderedAsset render_text(std::string_view text, int size, Rgb color,
                                 const FontCatalog& catalog = FontCatalog::standard(),
                                 Rgb background = colors::black) {
  if (text.empty()) throw EmptyText("cannot render empty text");
  if (!catalog.contains(size)) throw InconsistentInput("size " + std::to_string(size) + " is not in the catalog");
  if (auto bad = unsupported_glyphs(text); !bad.empty()) throw UnsupportedGlyph(std::move(bad));
  const auto layout = detail::split_hard(text::decode_utf8(text));
  return {std::string(text), size, color, render_lines(layout.lines, size, color, background)};
}

inline RenderedAsset render_layout(const TextLayout& layout, Rgb color, Rgb background = colors::black) {
  std::string joined;
  for (std::size_t i = 0; i < layout.lines.size(); ++i) {
    if (i) joined += '\n';
    joined += layout.lines[i];
  }
  if (auto bad = unsupported_glyphs(joined); !bad.empty()) throw UnsupportedGlyph(std::move(bad));
  return {joined, layout.size, color, render_lines(layout.lines, layout.size, color, background)};
}

}  // namespace wearsim::render
