#pragma once

// Messages exchanged with display clients. Each WebSocket text message is
// one JSON object: {"kind": ..., "seq": n, "payload": ...}. Sequence numbers
// start at 1 and grow by one per message, separately in each direction of
// each connection.

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "wearsim/frame_state.hpp"

namespace wearsim::wire {

using ui::ojson;

inline constexpr int kProtocolVersion = 1;

enum class Kind { Hello, Frame, Touch, Bye };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Hello:
      return "hello";
    case Kind::Frame:
      return "frame";
    case Kind::Touch:
      return "touch";
    case Kind::Bye:
      return "bye";
  }
  return "?";
}

inline std::optional<Kind> parse_kind(std::string_view s) {
  for (auto k : {Kind::Hello, Kind::Frame, Kind::Touch, Kind::Bye}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct Message {
  Kind kind = Kind::Hello;
  std::uint64_t seq = 0;
  ojson payload;
};

inline std::string encode(const Message& m) {
  return ojson{{"kind", to_string(m.kind)}, {"seq", m.seq}, {"payload", m.payload}}.dump();
}

inline Message decode(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("wire message is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("wire message must be an object");
  const auto kind = j.contains("kind") && j["kind"].is_string() ? parse_kind(j["kind"].get<std::string>()) : std::nullopt;
  if (!kind) throw ParseError("wire message has no valid kind");
  if (!j.contains("seq") || !j["seq"].is_number_unsigned()) throw ParseError("wire message needs an unsigned seq");
  return Message{*kind, j["seq"].get<std::uint64_t>(), j.value("payload", ojson(nullptr))};
}

inline ojson hello_payload() {
  return ojson{{"protocol", kProtocolVersion},
               {"server", "wearsim"},
               {"screen", ojson{{"width", 320}, {"height", 240}}}};
}

inline ojson bye_payload(std::string_view reason) { return ojson{{"reason", reason}}; }

/// Touch payload of an incoming message, validated.
inline ui::TouchEvent touch_payload(const Message& m) {
  if (m.kind != Kind::Touch) throw ParseError("not a touch message");
  return ui::touch_from_json(nlohmann::json::parse(m.payload.dump()));
}

}  // namespace wearsim::wire
