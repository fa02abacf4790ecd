#include <CLI11.hpp>
#include <fmt/core.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "wearsim/asset_pack.hpp"
#include "wearsim/icons.hpp"
#include "wearsim/live.hpp"

using namespace wearsim;

namespace {

int fail(const Error& e) {
  fmt::print(stderr, "error: {}\n", e.what());
  if (e.code() == "ConfigError") return 2;
  if (e.code() == "PortInUse") return 3;
  return 1;
}

int graph_validate(const std::string& path) {
  const auto doc = gateway::read_file(path, "graph");
  try {
    const auto g = graph::load_graph(doc);
    fmt::print("ok {} \"{}\": {} nodes, {} edges\n", g.path_id(), g.title(), g.nodes().size(), g.edges().size());
    return 0;
  } catch (const graph::ValidationError& e) {
    for (const auto& v : e.violations()) fmt::print("{} at {}: {}\n", v.rule, v.locator, v.message);
    fmt::print(stderr, "{}: {} violation(s)\n", path, e.violations().size());
    return 1;
  }
}

bus::BusValue parse_bus_value(const bus::SlotSpec& slot, std::string_view text) {
  if (slot.kind == bus::ValueKind::IdWord) return situation::encode_id_word(situation::ConventionId(text));
  const auto v = text::parse_number<std::int32_t>(text);
  if (!v) throw ParseError("slot " + slot.name + " takes an int32, got '" + std::string(text) + "'");
  return *v;
}

int bus_dump(const std::optional<std::string>& scenario, double at, const std::vector<std::string>& sets,
             const std::vector<std::string>& consumes) {
  bus::BusRegion bus(defaults::default_memory_map());
  if (scenario) {
    feed::FeedPump pump(gateway::load_scenario_spec(*scenario), bus, defaults::default_threshold_rules(),
                        situation::rule_detector(defaults::default_detection_rules()));
    pump.advance_to(at_seconds(at));
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("--set expects slot=value, got '" + s + "'");
    const auto& slot = bus.map().at(s.substr(0, eq));
    bus.publish(slot, parse_bus_value(slot, std::string_view(s).substr(eq + 1)));
  }
  for (const auto& c : consumes) bus.consume(c);
  fmt::print("{}", bus::dump(bus));
  return 0;
}

int feed_run(const std::string& scenario, double speed) {
  auto sc = gateway::load_scenario_spec(scenario);
  bus::BusRegion bus(defaults::default_memory_map());
  feed::FeedPump pump(std::move(sc), bus, defaults::default_threshold_rules(),
                      situation::rule_detector(defaults::default_detection_rules()));
  feed::run_realtime(pump, speed, std::stop_token{},
                     [](const feed::PublishEffect& e) { fmt::print("{}\n", gateway::feed_entry(e).dump()); });
  return 0;
}

int feed_synth(const std::string& profile, std::uint64_t seed, int seconds, const std::optional<std::string>& out) {
  const auto p = feed::parse_profile(profile);
  if (!p) throw ConfigError("unknown profile '" + profile + "' (stable, deteriorating, arrest)");
  const auto doc = feed::format_scenario(feed::synth_scenario(seed, seconds, *p));
  if (!out) {
    fmt::print("{}", doc);
    return 0;
  }
  std::ofstream f(*out, std::ios::binary);
  f << doc;
  if (!f) throw ConfigError("cannot write '" + *out + "'");
  return 0;
}

int assets_generate(const std::string& corpus_path, const std::string& colors, const std::string& out) {
  const auto corpus = assets::parse_corpus(gateway::read_file(corpus_path, "corpus"));
  std::vector<Rgb> palette;
  for (auto name : text::split(colors, ',')) {
    const auto c = parse_color(text::trim(name));
    if (!c) throw ConfigError("unknown colour '" + std::string(name) + "'");
    palette.push_back(*c);
  }
  const auto r = assets::generate_asset_pack(corpus, palette, out);
  for (const auto& row : r.manifest) {
    if (row.contains("error")) {
      fmt::print(stderr, "line {}: {}\n", row["line"].get<int>(), row["error"].get<std::string>());
    }
  }
  fmt::print("{} written, {} already present, {} failed\n", r.written, r.existing, r.failed);
  return r.failed > 0 ? 1 : 0;
}

int assets_icons(const std::string& out) {
  std::filesystem::create_directories(out);
  std::ofstream manifest(std::filesystem::path(out) / "manifest.jsonl", std::ios::binary);
  for (auto name : render::kIconNames) {
    const auto ppm = to_ppm(render::render_icon(name));
    const auto file = std::string(name) + ".ppm";
    std::ofstream f(std::filesystem::path(out) / file, std::ios::binary);
    f << ppm;
    manifest << ui::ojson{{"name", name}, {"file", file}, {"width", 24}, {"height", 24}, {"sha256", sha256_hex(ppm)}}
                    .dump()
             << "\n";
  }
  fmt::print("{} icons written to {}\n", render::kIconNames.size(), out);
  return 0;
}

int sim_run(gateway::RunConfig config) {
  if (!config.headless) return gateway::run_live(config, std::cout);
  std::vector<gateway::ScriptStep> script;
  if (config.script_path) script = gateway::parse_script(gateway::read_file(*config.script_path, "script"));
  const auto r = gateway::run_headless(config, script);
  const auto jsonl = gateway::to_jsonl(r.log);
  if (config.log_path) {
    std::ofstream f(*config.log_path, std::ios::binary);
    f << jsonl;
    if (!f) throw ConfigError("cannot write log '" + *config.log_path + "'");
    fmt::print("{} log lines, final screen {}, digest {}\n", r.log.size(), ui::to_string(r.final_frame.screen),
               ui::digest(r.final_frame));
  } else {
    fmt::print("{}", jsonl);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wearsim: wearable treatment-path assistant simulator"};
  app.require_subcommand(1);
  int status = 0;

  auto* graph_cmd = app.add_subcommand("graph", "Treatment path graphs")->require_subcommand(1);
  std::string graph_file;
  auto* validate = graph_cmd->add_subcommand("validate", "Load and check a graph file");
  validate->add_option("file", graph_file, "Graph JSON file")->required();
  validate->callback([&] { status = graph_validate(graph_file); });

  auto* bus_cmd = app.add_subcommand("bus", "Shared memory bus")->require_subcommand(1);
  std::optional<std::string> dump_scenario;
  double dump_at = 0;
  std::vector<std::string> dump_sets, dump_consumes;
  auto* dump = bus_cmd->add_subcommand("dump", "Print the bus image as hex and per-slot lines");
  dump->add_option("--scenario", dump_scenario, "Feed this scenario (file or synth:<profile>:<seed>:<s>) first");
  dump->add_option("--at", dump_at, "Sim seconds to feed up to")->check(CLI::NonNegativeNumber);
  dump->add_option("--set", dump_sets, "Publish slot=value (repeatable)");
  dump->add_option("--consume", dump_consumes, "Consume a slot after publishing (repeatable)");
  dump->callback([&] { status = bus_dump(dump_scenario, dump_at, dump_sets, dump_consumes); });

  auto* feed_cmd = app.add_subcommand("feed", "Vitals feed")->require_subcommand(1);
  std::string feed_scenario;
  double feed_speed = 1.0;
  auto* run = feed_cmd->add_subcommand("run", "Play a scenario into a bus in real time, printing every publish");
  run->add_option("--scenario", feed_scenario, "Scenario file or synth:<profile>:<seed>:<seconds>")->required();
  run->add_option("--speed", feed_speed, "Scenario seconds per wall second")->check(CLI::PositiveNumber);
  run->callback([&] { status = feed_run(feed_scenario, feed_speed); });
  std::string synth_profile = "stable";
  std::uint64_t synth_seed = 1;
  int synth_seconds = 60;
  std::optional<std::string> synth_out;
  auto* synth = feed_cmd->add_subcommand("synth", "Write a synthetic scenario");
  synth->add_option("--profile", synth_profile, "stable, deteriorating or arrest");
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--seconds", synth_seconds, "Length in seconds")->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_out, "Output file (default stdout)");
  synth->callback([&] { status = feed_synth(synth_profile, synth_seed, synth_seconds, synth_out); });

  auto* assets_cmd = app.add_subcommand("assets", "Pre-rendered images")->require_subcommand(1);
  std::string corpus, colors = "white", assets_out;
  auto* generate = assets_cmd->add_subcommand("generate", "Render a text corpus in several colours");
  generate->add_option("--corpus", corpus, "Corpus file, one '[category] text' per line")->required();
  generate->add_option("--colors", colors, "Comma-separated colour names or #rrggbb");
  generate->add_option("--out", assets_out, "Output directory")->required();
  generate->callback([&] { status = assets_generate(corpus, colors, assets_out); });
  std::string icons_out;
  auto* icons = assets_cmd->add_subcommand("icons", "Write the icon set as PPM files");
  icons->add_option("--out", icons_out, "Output directory")->required();
  icons->callback([&] { status = assets_icons(icons_out); });

  auto* sim_cmd = app.add_subcommand("sim", "Full simulator")->require_subcommand(1);
  gateway::RunConfig config;
  std::optional<double> duration;
  auto* sim_run_cmd = sim_cmd->add_subcommand("run", "Run feed, bus, controller and engine together");
  sim_run_cmd->add_option("--graph", config.graph_paths, "Graph file (repeatable; the first one starts)")->required();
  sim_run_cmd->add_option("--scenario", config.scenario, "Scenario file or synth:<profile>:<seed>:<seconds>")
      ->required();
  sim_run_cmd->add_option("--speed", config.speed, "Sim seconds per wall second")->check(CLI::PositiveNumber);
  sim_run_cmd->add_option("--port", config.port, "WebSocket port")->check(CLI::Range(0, 65535));
  sim_run_cmd->add_option("--bind", config.bind, "Address to listen on");
  sim_run_cmd->add_flag("--headless", config.headless, "No server; step in lockstep and print the event log");
  sim_run_cmd->add_option("--script", config.script_path, "Touch script for headless runs");
  sim_run_cmd->add_option("--log", config.log_path, "Write the JSON-lines event log here");
  sim_run_cmd->add_option("--duration", duration, "Sim seconds to run")->check(CLI::PositiveNumber);
  sim_run_cmd->add_option("--battery-drain", config.battery_drain_per_minute, "Battery percent lost per minute");
  sim_run_cmd->callback([&] {
    config.duration_s = duration;
    status = sim_run(config);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    return fail(e);
  }
  return status;
}
