#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wearsim {

/// Base of every error raised by the library. `code()` is a stable short
/// identifier (e.g. "UnknownNode") usable in logs and tests.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define WEARSIM_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

WEARSIM_DEFINE_ERROR(ParseError);
WEARSIM_DEFINE_ERROR(UnknownNode);
WEARSIM_DEFINE_ERROR(MissingAnswer);
WEARSIM_DEFINE_ERROR(UnknownBranchLabel);
WEARSIM_DEFINE_ERROR(FactError);
WEARSIM_DEFINE_ERROR(AtEnd);
WEARSIM_DEFINE_ERROR(AtStart);
WEARSIM_DEFINE_ERROR(NoPending);
WEARSIM_DEFINE_ERROR(UnknownCode);
WEARSIM_DEFINE_ERROR(BadK);
WEARSIM_DEFINE_ERROR(UnknownSlot);
WEARSIM_DEFINE_ERROR(KindMismatch);
WEARSIM_DEFINE_ERROR(OrderError);
WEARSIM_DEFINE_ERROR(EmptyText);
WEARSIM_DEFINE_ERROR(DoesNotFit);
WEARSIM_DEFINE_ERROR(InconsistentInput);
WEARSIM_DEFINE_ERROR(InvalidTransition);
WEARSIM_DEFINE_ERROR(ConfigError);
WEARSIM_DEFINE_ERROR(PortInUse);
WEARSIM_DEFINE_ERROR(ScriptError);

#undef WEARSIM_DEFINE_ERROR

/// Raised when a glyph outside the embedded set is requested; carries the
/// offending code points.
class UnsupportedGlyph : public Error {
 public:
  explicit UnsupportedGlyph(std::vector<char32_t> code_points)
      : Error("UnsupportedGlyph", describe(code_points)),
        code_points_(std::move(code_points)) {}

  const std::vector<char32_t>& code_points() const noexcept { return code_points_; }

 private:
  static std::string describe(const std::vector<char32_t>& cps) {
    std::string out = "no glyph for";
    for (char32_t cp : cps) {
      char buf[16];
      std::snprintf(buf, sizeof buf, " U+%04X", static_cast<unsigned>(cp));
      out += buf;
    }
    return out;
  }

  std::vector<char32_t> code_points_;
};

}  // namespace wearsim
