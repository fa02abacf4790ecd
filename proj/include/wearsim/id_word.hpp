#pragma once

#include <array>
#include <cstdint>

namespace wearsim {

/// A 32-bit bus word carrying up to four ASCII bytes, first byte in the
/// least significant position (little-endian byte order in memory).
struct IdWord {
  std::uint32_t bits = 0;

  std::array<std::uint8_t, 4> bytes() const {
    return {static_cast<std::uint8_t>(bits), static_cast<std::uint8_t>(bits >> 8),
            static_cast<std::uint8_t>(bits >> 16), static_cast<std::uint8_t>(bits >> 24)};
  }

  friend bool operator==(IdWord, IdWord) = default;
};

}  // namespace wearsim
