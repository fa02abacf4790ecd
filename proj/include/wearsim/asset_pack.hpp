#pragma once

// Pre-rendered text assets: one PPM per (corpus line, colour), named by
// content hash, plus a JSON-lines manifest.

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wearsim/digest.hpp"
#include "wearsim/error.hpp"
#include "wearsim/image.hpp"
#include "wearsim/text_renderer.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::assets {

struct Category {
  std::string_view name;
  int width;
  int height;
  bool wrap;
};

/// Target boxes, one per kind of on-screen text.
inline constexpr Category kCategories[] = {
    {"step", 312, 32, true},  {"title", 102, 47, true},   {"button", 97, 47, true}, {"tile", 60, 48, true},
    {"group", 312, 20, false}, {"info", 312, 178, true}, {"header", 96, 20, false},
};

inline const Category& category(std::string_view name) {
  for (const auto& c : kCategories) {
    if (c.name == name) return c;
  }
  throw ParseError("unknown asset category '" + std::string(name) + "'");
}

struct CorpusLine {
  int line_no = 0;
  std::string category = "step";
  std::string text;
};

/// Corpus format: one text per line, optionally prefixed by "[category] ".
/// Blank lines and lines starting with '#' are skipped. A literal "\n" in
/// the text is a forced line break.
inline std::vector<CorpusLine> parse_corpus(std::string_view doc) {
  std::vector<CorpusLine> out;
  int no = 0;
  for (auto raw : text::lines(doc)) {
    ++no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    CorpusLine c;
    c.line_no = no;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) throw ParseError("corpus line " + std::to_string(no) + ": unclosed '['");
      c.category = std::string(text::trim(line.substr(1, close - 1)));
      line = text::trim(line.substr(close + 1));
    }
    std::string t;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == 'n') {
        t += '\n';
        ++i;
      } else {
        t += line[i];
      }
    }
    c.text = std::move(t);
    out.push_back(std::move(c));
  }
  if (out.empty()) throw ParseError("corpus has no lines");
  return out;
}

struct PackResult {
  std::vector<nlohmann::ordered_json> manifest;
  int written = 0;
  int existing = 0;
  int failed = 0;
};

inline std::string asset_name(std::string_view ppm) { return sha256_hex(ppm).substr(0, 16) + ".ppm"; }

/// Renders every corpus line in every colour into `out_dir`. Files already
/// present are left alone, so a second run writes nothing. Lines that cannot
/// be rendered get an error row and the run continues.
inline PackResult generate_asset_pack(const std::vector<CorpusLine>& corpus, const std::vector<Rgb>& palette,
                                      const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  if (palette.empty()) throw ConfigError("palette is empty");
  fs::create_directories(out_dir);
  PackResult r;
  for (const auto& line : corpus) {
    for (const auto& color : palette) {
      nlohmann::ordered_json row;
      row["line"] = line.line_no;
      row["text"] = line.text;
      row["category"] = line.category;
      row["color"] = to_hex(color);
      try {
        const auto& cat = category(line.category);
        const auto layout = render::fit_font_size(line.text, render::TextBox(cat.width, cat.height),
                                                  render::FontCatalog::standard(), cat.wrap);
        const auto asset = render::render_layout(layout, color);
        const auto ppm = to_ppm(asset.image);
        const auto name = asset_name(ppm);
        const auto path = out_dir / name;
        if (fs::exists(path)) {
          ++r.existing;
        } else {
          std::ofstream f(path, std::ios::binary);
          f << ppm;
          if (!f) throw ConfigError("cannot write " + path.string());
          ++r.written;
        }
        row["file"] = name;
        row["size"] = layout.size;
        row["width"] = asset.width();
        row["height"] = asset.height();
        row["lines"] = layout.lines;
      } catch (const Error& e) {
        ++r.failed;
        row["error"] = e.what();
      }
      r.manifest.push_back(std::move(row));
    }
  }
  std::ofstream m(out_dir / "manifest.jsonl", std::ios::binary);
  for (const auto& row : r.manifest) m << row.dump() << '\n';
  return r;
}

}  // namespace wearsim::assets
