#pragma once

// Emulated inter-processor shared memory: a 132-byte region holding a 32-bit
// validity bitmask at 0x00 followed by 32 four-byte slots. A producer stores a
// slot value and then sets the slot's validity bit; the consumer reads a slot
// only while its bit is set and clears the bit once it has taken the value.
//
// Layout (little-endian throughout):
//
//   0x00  validity bitmask, bit i <-> slot i
//   0x04  slot 0 (spo2)
//   0x08  slot 1
//   ...
//   0x80  slot 31

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wearsim/error.hpp"
#include "wearsim/id_word.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::bus {

inline constexpr std::size_t kRegionSize = 132;
inline constexpr std::size_t kValidityOffset = 0x00;
inline constexpr std::size_t kMaxSlots = 32;

enum class ValueKind { Int32, IdWord };

constexpr std::string_view to_string(ValueKind k) { return k == ValueKind::Int32 ? "int32" : "idword"; }

struct SlotSpec {
  int index = 0;
  std::string name;
  ValueKind kind = ValueKind::Int32;

  constexpr std::size_t offset() const { return 0x04 + 4 * static_cast<std::size_t>(index); }

  friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

/// Declarative slot assignment. Only mapped slots are reachable through the
/// bus; static screen content never transits the region.
class MemoryMap {
 public:
  explicit MemoryMap(std::vector<SlotSpec> slots) : slots_(std::move(slots)) {
    if (slots_.size() > kMaxSlots) throw ParseError("memory map holds more than 32 slots");
    std::set<int> indices;
    std::set<std::string> names;
    for (const auto& s : slots_) {
      if (s.index < 0 || s.index >= static_cast<int>(kMaxSlots)) {
        throw ParseError("slot '" + s.name + "' index " + std::to_string(s.index) + " outside 0..31");
      }
      if (s.name.empty()) throw ParseError("slot " + std::to_string(s.index) + " has no name");
      if (!indices.insert(s.index).second) throw ParseError("slot index " + std::to_string(s.index) + " repeated");
      if (!names.insert(s.name).second) throw ParseError("slot name '" + s.name + "' repeated");
    }
    const auto* first = find(0);
    if (!first || first->name != "spo2" || first->kind != ValueKind::Int32) {
      throw ParseError("slot 0 must be the int32 slot 'spo2' at 0x04");
    }
    std::sort(slots_.begin(), slots_.end(), [](const SlotSpec& a, const SlotSpec& b) { return a.index < b.index; });
  }

  const std::vector<SlotSpec>& slots() const noexcept { return slots_; }

  const SlotSpec* find(std::string_view name) const {
    for (const auto& s : slots_) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  const SlotSpec* find(int index) const {
    for (const auto& s : slots_) {
      if (s.index == index) return &s;
    }
    return nullptr;
  }

  const SlotSpec& at(std::string_view name) const {
    if (const auto* s = find(name)) return *s;
    throw UnknownSlot("no slot named '" + std::string(name) + "'");
  }

  friend bool operator==(const MemoryMap&, const MemoryMap&) = default;

 private:
  std::vector<SlotSpec> slots_;
};

/// Parses the map file: one `index name kind` triple per line, `#` comments.
inline MemoryMap parse_memory_map(std::string_view doc) {
  std::vector<SlotSpec> slots;
  int lineno = 0;
  for (auto raw : text::lines(doc)) {
    ++lineno;
    auto line = text::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto cols = text::split_ws(line);
    const auto where = "memory map line " + std::to_string(lineno);
    if (cols.size() != 3) throw ParseError(where + ": expected 'index name kind'");
    auto index = text::parse_number<int>(cols[0]);
    if (!index) throw ParseError(where + ": bad index '" + std::string(cols[0]) + "'");
    ValueKind kind;
    if (cols[2] == "int32") {
      kind = ValueKind::Int32;
    } else if (cols[2] == "idword") {
      kind = ValueKind::IdWord;
    } else {
      throw ParseError(where + ": unknown kind '" + std::string(cols[2]) + "'");
    }
    slots.push_back({*index, std::string(cols[1]), kind});
  }
  return MemoryMap(std::move(slots));
}

using BusValue = std::variant<std::int32_t, IdWord>;

constexpr ValueKind kind_of(const BusValue& v) {
  return std::holds_alternative<std::int32_t>(v) ? ValueKind::Int32 : ValueKind::IdWord;
}

struct SlotReading {
  std::string name;
  std::optional<BusValue> value;

  friend bool operator==(const SlotReading&, const SlotReading&) = default;
};

/// `peek` of every mapped slot, in slot order. Taken slot by slot: there is
/// no cross-slot atomicity.
struct Snapshot {
  std::vector<SlotReading> slots;

  const std::optional<BusValue>* find(std::string_view name) const {
    for (const auto& s : slots) {
      if (s.name == name) return &s.value;
    }
    return nullptr;
  }

  std::optional<std::int32_t> int_value(std::string_view name) const {
    const auto* v = find(name);
    if (!v || !*v) return std::nullopt;
    if (const auto* i = std::get_if<std::int32_t>(&**v)) return *i;
    return std::nullopt;
  }
};

namespace detail {

constexpr std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xFF) << 24) | ((v & 0xFF00) << 8) | ((v >> 8) & 0xFF00) | (v >> 24);
  }
}
constexpr std::uint32_t from_le(std::uint32_t v) { return to_le(v); }

}  // namespace detail

/// The shared region. Words are stored in little-endian byte order so the
/// byte image is identical on every host.
///
/// Handoff contract per slot, for one producer and one consumer:
///  - publish: clear the bit, store the value (release), set the bit (release)
///  - consume: load the bit (acquire); if set, load the value (acquire), then
///    clear the bit with a read-modify-write and return the value only if the
///    bit was still set at that moment
/// A consumer that observes the bit set therefore sees a complete value, and
/// a value is handed over at most once. A publish that races a consume may
/// supersede the value the consumer was about to take (last writer wins).
/// Every operation completes in a bounded number of steps.
class BusRegion {
 public:
  explicit BusRegion(MemoryMap map) : map_(std::move(map)) {
    for (auto& w : words_) w.store(0, std::memory_order_relaxed);
  }

  BusRegion(const BusRegion&) = delete;
  BusRegion& operator=(const BusRegion&) = delete;

  const MemoryMap& map() const noexcept { return map_; }

  void publish(std::string_view slot, BusValue value) { publish(map_.at(slot), value); }

  void publish(const SlotSpec& slot, BusValue value) {
    if (kind_of(value) != slot.kind) {
      throw KindMismatch("slot '" + slot.name + "' holds " + std::string(to_string(slot.kind)) + ", got " +
                         std::string(to_string(kind_of(value))));
    }
    const std::uint32_t bit = 1u << slot.index;
    auto& validity = words_[0];
    validity.fetch_and(detail::to_le(~bit), std::memory_order_acq_rel);
    word(slot).store(detail::to_le(encode(value)), std::memory_order_release);
    validity.fetch_or(detail::to_le(bit), std::memory_order_release);
  }

  std::optional<BusValue> consume(std::string_view slot) { return consume(map_.at(slot)); }

  std::optional<BusValue> consume(const SlotSpec& slot) {
    const std::uint32_t bit = detail::to_le(1u << slot.index);
    auto& validity = words_[0];
    if ((validity.load(std::memory_order_acquire) & bit) == 0) return std::nullopt;
    const std::uint32_t raw = word(slot).load(std::memory_order_acquire);
    const std::uint32_t before = validity.fetch_and(~bit, std::memory_order_acq_rel);
    if ((before & bit) == 0) return std::nullopt;
    return decode(slot.kind, detail::from_le(raw));
  }

  std::optional<BusValue> peek(std::string_view slot) const { return peek(map_.at(slot)); }

  std::optional<BusValue> peek(const SlotSpec& slot) const {
    const std::uint32_t bit = detail::to_le(1u << slot.index);
    if ((words_[0].load(std::memory_order_acquire) & bit) == 0) return std::nullopt;
    return decode(slot.kind, detail::from_le(word(slot).load(std::memory_order_acquire)));
  }

  Snapshot snapshot() const {
    Snapshot out;
    for (const auto& s : map_.slots()) out.slots.push_back({s.name, peek(s)});
    return out;
  }

  bool is_valid(std::string_view slot) const {
    const auto& s = map_.at(slot);
    return (validity() >> s.index) & 1u;
  }

  /// Validity bitmask as a host integer (bit i <-> slot i).
  std::uint32_t validity() const { return detail::from_le(words_[0].load(std::memory_order_acquire)); }

  /// Byte image of the whole region.
  std::array<std::uint8_t, kRegionSize> bytes() const {
    std::array<std::uint8_t, kRegionSize> out{};
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint32_t v = detail::from_le(words_[w].load(std::memory_order_acquire));
      for (std::size_t b = 0; b < 4; ++b) out[4 * w + b] = static_cast<std::uint8_t>(v >> (8 * b));
    }
    return out;
  }

  /// Raw word stored at a slot, regardless of its validity bit.
  std::uint32_t raw_word(const SlotSpec& slot) const {
    return detail::from_le(word(slot).load(std::memory_order_acquire));
  }

 private:
  static std::uint32_t encode(const BusValue& v) {
    if (const auto* i = std::get_if<std::int32_t>(&v)) return static_cast<std::uint32_t>(*i);
    return std::get<IdWord>(v).bits;
  }

  static BusValue decode(ValueKind kind, std::uint32_t raw) {
    if (kind == ValueKind::Int32) return static_cast<std::int32_t>(raw);
    return IdWord{raw};
  }

  std::atomic<std::uint32_t>& word(const SlotSpec& s) { return words_[1 + static_cast<std::size_t>(s.index)]; }
  const std::atomic<std::uint32_t>& word(const SlotSpec& s) const {
    return words_[1 + static_cast<std::size_t>(s.index)];
  }

  MemoryMap map_;
  std::array<std::atomic<std::uint32_t>, kRegionSize / 4> words_;
};

static_assert(std::atomic<std::uint32_t>::is_always_lock_free);

inline std::string format_value(const SlotSpec& slot, std::uint32_t raw) {
  char buf[48];
  if (slot.kind == ValueKind::Int32) {
    std::snprintf(buf, sizeof buf, "%d", static_cast<std::int32_t>(raw));
    return buf;
  }
  std::string ascii;
  for (auto b : IdWord{raw}.bytes()) {
    if (b == 0) break;
    ascii.push_back(b >= 0x20 && b < 0x7F ? static_cast<char>(b) : '.');
  }
  std::snprintf(buf, sizeof buf, "0x%08x", raw);
  return ascii.empty() ? std::string(buf) : "\"" + ascii + "\" " + buf;
}

/// Hex dump of the region followed by one decoded line per mapped slot.
///
///   0x00: 01 00 00 00 61 00 00 00 00 00 00 00 00 00 00 00
///   ...
///   validity 0x00000001
///   [0] spo2 @0x04 int32 valid 97
inline std::string dump(const BusRegion& bus) {
  const auto image = bus.bytes();
  std::string out;
  char buf[64];
  for (std::size_t row = 0; row < kRegionSize; row += 16) {
    std::snprintf(buf, sizeof buf, "0x%02zx:", row);
    out += buf;
    for (std::size_t i = row; i < std::min(row + 16, kRegionSize); ++i) {
      std::snprintf(buf, sizeof buf, " %02x", image[i]);
      out += buf;
    }
    out += '\n';
  }
  const std::uint32_t valid = bus.validity();
  std::snprintf(buf, sizeof buf, "validity 0x%08x\n", valid);
  out += buf;
  for (const auto& s : bus.map().slots()) {
    std::snprintf(buf, sizeof buf, "[%d] ", s.index);
    out += buf;
    out += s.name;
    std::snprintf(buf, sizeof buf, " @0x%02zx ", s.offset());
    out += buf;
    out += to_string(s.kind);
    out += ((valid >> s.index) & 1u) ? " valid " : " clear ";
    out += format_value(s, bus.raw_word(s));
    out += '\n';
  }
  return out;
}

}  // namespace wearsim::bus
