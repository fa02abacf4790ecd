#pragma once

// Composition root: feed -> bus -> controller -> engine, plus the headless
// lockstep runner used by scripted runs and golden logs.

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wearsim/defaults.hpp"
#include "wearsim/display_controller.hpp"
#include "wearsim/geometry_audit.hpp"
#include "wearsim/vitals_feed.hpp"

namespace wearsim::gateway {

using ui::ojson;

inline constexpr int kFramePeriodMs = 50;

struct RunConfig {
  std::vector<std::string> graph_paths;
  /// Scenario file path, or "synth:<profile>:<seed>:<seconds>".
  std::string scenario;
  double speed = 1.0;
  int port = 8765;
  std::string bind = "127.0.0.1";
  bool headless = false;
  std::optional<std::string> script_path;
  std::optional<std::string> log_path;
  /// Sim seconds to run; default is the end of the scenario or script plus one second.
  std::optional<double> duration_s;
  double battery_drain_per_minute = 1.0;
};

inline std::string read_file(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + std::string(what) + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline feed::Scenario load_scenario_spec(const std::string& spec) {
  if (spec.rfind("synth:", 0) == 0) {
    const auto parts = text::split(spec, ':');
    if (parts.size() != 4) throw ConfigError("synthetic scenario must look like synth:<profile>:<seed>:<seconds>");
    const auto profile = feed::parse_profile(parts[1]);
    const auto seed = text::parse_number<std::uint64_t>(parts[2]);
    const auto seconds = text::parse_number<int>(parts[3]);
    if (!profile || !seed || !seconds || *seconds <= 0) throw ConfigError("bad synthetic scenario '" + spec + "'");
    return feed::synth_scenario(*seed, *seconds, *profile);
  }
  try {
    return feed::load_scenario(read_file(spec, "scenario"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("scenario '" + spec + "': " + e.what());
  }
}

inline std::shared_ptr<const graph::TreatmentGraph> load_graph_file(const std::string& path) {
  try {
    return std::make_shared<const graph::TreatmentGraph>(graph::load_graph(read_file(path, "graph")));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("graph '" + path + "': " + e.what());
  }
}

inline void check_config(const RunConfig& c) {
  if (!(c.speed > 0)) throw ConfigError("speed must be > 0");
  if (c.graph_paths.empty()) throw ConfigError("at least one graph is required");
  if (c.scenario.empty()) throw ConfigError("a scenario is required");
  if (c.port < 0 || c.port > 65535) throw ConfigError("port out of range");
  if (c.duration_s && !(*c.duration_s > 0)) throw ConfigError("duration must be > 0");
}

// ---------------------------------------------------------------------------
// Scripts
//
//   # comment
//   <t> tap <x> <y>              down+up of pointer 0
//   <t> down|up <x> <y> [ptr]
//   <t> press <button-id>
//
// Times are sim seconds and must not decrease.

struct ScriptStep {
  SimTime at;
  int line = 0;
  std::optional<ui::TouchEvent> touch;
  std::optional<std::string> press;
};

inline std::vector<ScriptStep> parse_script(std::string_view doc) {
  std::vector<ScriptStep> steps;
  int no = 0;
  std::optional<double> last;
  for (auto raw : text::lines(doc)) {
    ++no;
    const auto hash = raw.find('#');
    const auto line = text::trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto tok = text::split_ws(line);
    auto fail = [&](const std::string& why) { return ScriptError("script line " + std::to_string(no) + ": " + why); };
    if (tok.size() < 2) throw fail("expected '<t> <action> ...'");
    const auto t = text::parse_number<double>(tok[0]);
    if (!t || *t < 0) throw fail("bad time '" + std::string(tok[0]) + "'");
    if (last && *t < *last) throw fail("time goes backwards");
    last = *t;
    const auto at = at_seconds(*t);
    const auto action = tok[1];
    if (action == "press") {
      if (tok.size() != 3) throw fail("press takes one button id");
      steps.push_back({at, no, std::nullopt, std::string(tok[2])});
      continue;
    }
    if (action != "tap" && action != "down" && action != "up") throw fail("unknown action '" + std::string(action) + "'");
    if (tok.size() < 4 || tok.size() > 5 || (action == "tap" && tok.size() != 4)) throw fail("expected x y [pointer]");
    const auto x = text::parse_number<int>(tok[2]);
    const auto y = text::parse_number<int>(tok[3]);
    const auto ptr = tok.size() == 5 ? text::parse_number<int>(tok[4]) : std::optional<int>(0);
    if (!x || !y || !ptr) throw fail("coordinates must be integers");
    if (!ui::kScreen.contains(*x, *y)) throw fail("touch outside 320x240");
    if (*ptr < 0 || *ptr >= ui::kMaxTouchPoints) throw fail("pointer must be 0..4");
    if (action == "tap") {
      steps.push_back({at, no, ui::TouchEvent{*x, *y, ui::TouchAction::Down, 0}, std::nullopt});
      steps.push_back({at, no, ui::TouchEvent{*x, *y, ui::TouchAction::Up, 0}, std::nullopt});
    } else {
      steps.push_back(
          {at, no, ui::TouchEvent{*x, *y, action == "down" ? ui::TouchAction::Down : ui::TouchAction::Up, *ptr},
           std::nullopt});
    }
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Stack

inline std::string value_json(const bus::BusValue& v) {
  if (const auto* i = std::get_if<std::int32_t>(&v)) return std::to_string(*i);
  const auto word = std::get<IdWord>(v);
  try {
    return std::string(situation::decode_id_word(word).code());
  } catch (const UnknownCode&) {
    return std::to_string(word.bits);
  }
}

inline ojson feed_entry(const feed::PublishEffect& e) {
  ojson j{{"t", millis(e.at)}, {"kind", "feed"}, {"slot", e.slot}};
  if (const auto* i = std::get_if<std::int32_t>(&e.value)) {
    j["value"] = *i;
  } else {
    j["value"] = value_json(e.value);
  }
  return j;
}

/// Everything one run owns. The bus is the only link between the pump
/// (producer) and the controller (consumer).
struct Stack {
  std::vector<std::shared_ptr<const graph::TreatmentGraph>> graphs;
  feed::Scenario scenario;
  std::unique_ptr<bus::BusRegion> bus;
  std::unique_ptr<feed::FeedPump> pump;
  std::unique_ptr<ui::DisplayController> controller;

  explicit Stack(const RunConfig& config) {
    check_config(config);
    for (const auto& p : config.graph_paths) graphs.push_back(load_graph_file(p));
    scenario = load_scenario_spec(config.scenario);
    bus = std::make_unique<bus::BusRegion>(defaults::default_memory_map());
    pump = std::make_unique<feed::FeedPump>(scenario, *bus, defaults::default_threshold_rules(),
                                            situation::rule_detector(defaults::default_detection_rules()));
    ui::ControllerConfig cc;
    cc.graphs = graphs;
    cc.battery_drain_per_minute = config.battery_drain_per_minute;
    controller = std::make_unique<ui::DisplayController>(*bus, std::move(cc), scenario.patient);
    controller->start_session(0, SimTime{});
    // The opening session is part of the setup, not of the run's log.
    controller->take_log();
  }
};

/// Throws InconsistentInput if `frame` breaks a layout rule; nothing leaves
/// the gateway without passing this.
inline void assert_geometry(const ui::FrameState& frame) {
  const auto v = ui::audit(frame);
  if (!v.empty()) throw InconsistentInput("frame for " + std::string(ui::to_string(frame.screen)) + ": " + v.front());
}

struct HeadlessResult {
  std::vector<ojson> log;
  std::vector<std::string> digests;  ///< one per logged frame
  ui::FrameState final_frame;
  SimTime end;
};

inline std::string to_jsonl(const std::vector<ojson>& log) {
  std::string out;
  for (const auto& e : log) out += e.dump() + "\n";
  return out;
}

/// Runs the whole stack in lockstep: each frame advances sim time by
/// 50 ms x speed, publishes due samples, ticks the controller, then applies
/// script steps that are due. A frame line is logged whenever the digest
/// changes.
inline HeadlessResult run_headless(const RunConfig& config, const std::vector<ScriptStep>& script) {
  Stack stack(config);
  auto& ctl = *stack.controller;
  HeadlessResult r;
  const auto period = SimDuration{static_cast<std::int64_t>(kFramePeriodMs * config.speed + 0.5)};
  if (period.count() <= 0) throw ConfigError("speed too low for a 50 ms frame");

  SimTime end;
  if (config.duration_s) {
    end = at_seconds(*config.duration_s);
  } else {
    SimTime last = stack.scenario.samples.empty() ? SimTime{} : at_seconds(stack.scenario.samples.back().t);
    if (!script.empty()) last = std::max(last, script.back().at);
    end = last + std::chrono::seconds(1);
  }

  std::string last_digest;
  auto flush = [&](SimTime t) {
    for (auto& e : ctl.take_log()) r.log.push_back(std::move(e));
    const auto& frame = ctl.frame();
    assert_geometry(frame);
    const auto d = ui::digest(frame);
    if (d != last_digest) {
      last_digest = d;
      r.digests.push_back(d);
      r.log.push_back(ojson{{"t", millis(t)}, {"kind", "frame"}, {"screen", ui::to_string(frame.screen)}, {"digest", d}});
    }
  };

  std::size_t next = 0;
  for (SimTime t{};; t += period) {
    if (t > end) t = end;
    for (const auto& e : stack.pump->advance_to(t)) r.log.push_back(feed_entry(e));
    ctl.tick(t);
    for (; next < script.size() && script[next].at <= t; ++next) {
      const auto& step = script[next];
      try {
        if (step.press) {
          ctl.press(*step.press, t);
        } else {
          ctl.touch(*step.touch, t);
        }
      } catch (const InvalidTransition& e) {
        throw ScriptError("script line " + std::to_string(step.line) + ": " + e.what());
      }
    }
    flush(t);
    if (t >= end) break;
  }
  r.final_frame = ctl.frame();
  r.end = end;
  return r;
}

}  // namespace wearsim::gateway
