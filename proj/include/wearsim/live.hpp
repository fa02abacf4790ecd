#pragma once

// Live mode: the pump runs against the wall clock on its own thread, the
// controller is stepped every 50 ms and frames go out over WebSocket.

#include <chrono>
#include <csignal>
#include <deque>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "wearsim/gateway.hpp"
#include "wearsim/ws_server.hpp"

namespace wearsim::gateway {

namespace net = ws::net;

/// Consumer side of a live run plus the WebSocket endpoint. step() is
/// called from one thread only; touches arrive from the network thread
/// through a FIFO queue.
class LiveServer {
 public:
  LiveServer(Stack& stack, const RunConfig& config)
      : stack_(&stack),
        server_(ioc_, config.bind, static_cast<unsigned short>(config.port),
                [this] { return current_frame(); },
                [this](const ui::TouchEvent& t) { queue_touch(t); }) {
    publish(SimTime{});
    io_thread_ = std::thread([this] {
      auto guard = net::make_work_guard(ioc_);
      ioc_.run();
    });
  }

  LiveServer(const LiveServer&) = delete;
  LiveServer& operator=(const LiveServer&) = delete;

  ~LiveServer() { stop(); }

  unsigned short port() const { return server_.port(); }
  std::size_t clients() const { return server_.clients(); }
  std::uint64_t rejected_messages() const { return server_.rejected_messages(); }

  /// One consumer frame: tick, then queued touches, then broadcast if the
  /// frame changed.
  void step(SimTime now) {
    auto& ctl = *stack_->controller;
    ctl.tick(now);
    std::deque<ui::TouchEvent> touches;
    {
      std::lock_guard lock(mutex_);
      touches.swap(touches_);
    }
    for (const auto& t : touches) {
      try {
        ctl.touch(t, now);
      } catch (const InvalidTransition&) {
      }
    }
    publish(now);
  }

  std::vector<ojson> take_log() {
    std::lock_guard lock(mutex_);
    return std::exchange(log_, {});
  }

  void add_log(ojson entry) {
    std::lock_guard lock(mutex_);
    log_.push_back(std::move(entry));
  }

  void stop() {
    if (!io_thread_.joinable()) return;
    server_.shutdown();
    // Give the bye messages a moment to flush before the loop is stopped.
    const auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(500);
    while (server_.clients() > 0 && std::chrono::steady_clock::now() < until) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    ioc_.stop();
    io_thread_.join();
  }

 private:
  std::optional<ojson> current_frame() {
    std::lock_guard lock(mutex_);
    return frame_json_;
  }

  void queue_touch(const ui::TouchEvent& t) {
    std::lock_guard lock(mutex_);
    touches_.push_back(t);
  }

  void publish(SimTime now) {
    auto& ctl = *stack_->controller;
    const auto& frame = ctl.frame();
    assert_geometry(frame);
    const auto d = ui::digest(frame);
    std::vector<ojson> entries = ctl.take_log();
    const bool changed = d != digest_;
    if (changed) {
      digest_ = d;
      entries.push_back(
          ojson{{"t", millis(now)}, {"kind", "frame"}, {"screen", ui::to_string(frame.screen)}, {"digest", d}});
    }
    {
      std::lock_guard lock(mutex_);
      for (auto& e : entries) log_.push_back(std::move(e));
      if (changed) frame_json_ = ui::to_json(frame);
    }
    if (changed) server_.broadcast_frame(ui::to_json(frame));
  }

  Stack* stack_;
  net::io_context ioc_;
  ws::Server server_;
  std::thread io_thread_;
  std::mutex mutex_;
  std::deque<ui::TouchEvent> touches_;
  std::optional<ojson> frame_json_;
  std::string digest_;
  std::vector<ojson> log_;
};

/// Runs until `duration_s` of sim time has passed (when set) or until
/// SIGINT/SIGTERM. Returns the process exit status.
inline int run_live(const RunConfig& config, std::ostream& status) {
  Stack stack(config);
  LiveServer live(stack, config);
  status << "wearsim listening on ws://" << config.bind << ":" << live.port() << "\n" << std::flush;

  static std::atomic<bool> interrupted{false};
  interrupted = false;
  auto previous_int = std::signal(SIGINT, [](int) { interrupted = true; });
  auto previous_term = std::signal(SIGTERM, [](int) { interrupted = true; });

  std::jthread producer([&](std::stop_token st) {
    feed::run_realtime(*stack.pump, config.speed, st,
                       [&](const feed::PublishEffect& e) { live.add_log(feed_entry(e)); });
  });

  std::optional<std::ofstream> log_file;
  if (config.log_path) {
    log_file.emplace(*config.log_path, std::ios::binary);
    if (!*log_file) throw ConfigError("cannot write log '" + *config.log_path + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto period = std::chrono::milliseconds(kFramePeriodMs);
  auto next = start;
  while (!interrupted) {
    next += period;
    std::this_thread::sleep_until(next);
    const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const auto now = SimTime{SimDuration{static_cast<std::int64_t>(wall_ms * config.speed)}};
    live.step(now);
    if (log_file) {
      for (const auto& e : live.take_log()) *log_file << e.dump() << "\n";
      log_file->flush();
    }
    if (config.duration_s && now >= at_seconds(*config.duration_s)) break;
  }
  producer.request_stop();
  producer.join();
  live.stop();
  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  status << "wearsim stopped\n";
  return 0;
}

}  // namespace wearsim::gateway
