#pragma once

// WebSocket endpoint for display clients, on Boost.Beast. All socket work
// runs on one io_context thread; other threads talk to it through post().

#include <atomic>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "wearsim/error.hpp"
#include "wearsim/wire_protocol.hpp"

namespace wearsim::ws {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

class Server;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, Server& server) : ws_(std::move(socket)), server_(&server) {}

  void start();
  void send(wire::Kind kind, const wire::ojson& payload);
  void close(std::string_view reason);

 private:
  void on_accept(beast::error_code ec);
  void read();
  void on_read(beast::error_code ec, std::size_t);
  void flush();
  void drop();

  websocket::stream<beast::tcp_stream> ws_;
  Server* server_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  bool writing_ = false;
  bool open_ = false;
  bool closing_ = false;
  std::uint64_t out_seq_ = 0;
  std::uint64_t in_seq_ = 0;
};

/// Accepts clients, greets them with hello and the current frame, fans
/// frames out to every client and hands incoming touches to `on_touch`.
class Server {
 public:
  using CurrentFrame = std::function<std::optional<wire::ojson>()>;
  using OnTouch = std::function<void(const ui::TouchEvent&)>;

  Server(net::io_context& ioc, const std::string& address, unsigned short port, CurrentFrame current, OnTouch on_touch)
      : ioc_(ioc), acceptor_(ioc), current_(std::move(current)), on_touch_(std::move(on_touch)) {
    beast::error_code ec;
    const auto addr = net::ip::make_address(address, ec);
    if (ec) throw ConfigError("bad bind address '" + address + "'");
    const tcp::endpoint ep{addr, port};
    acceptor_.open(ep.protocol(), ec);
    if (!ec) acceptor_.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor_.bind(ep, ec);
    if (ec == net::error::address_in_use) throw PortInUse("port " + std::to_string(port) + " is already in use");
    if (!ec) acceptor_.listen(net::socket_base::max_listen_connections, ec);
    if (ec == net::error::address_in_use) throw PortInUse("port " + std::to_string(port) + " is already in use");
    if (ec) throw ConfigError("cannot listen on " + address + ":" + std::to_string(port) + ": " + ec.message());
    port_ = acceptor_.local_endpoint().port();
    accept();
  }

  unsigned short port() const { return port_; }
  std::size_t clients() const { return client_count_.load(); }
  std::uint64_t rejected_messages() const { return rejected_.load(); }

  /// Thread-safe: queues `frame` for every connected client.
  void broadcast_frame(wire::ojson frame) {
    net::post(ioc_, [this, f = std::move(frame)] {
      for (const auto& c : connections_) c->send(wire::Kind::Frame, f);
    });
  }

  /// Thread-safe: says bye to every client and stops accepting.
  void shutdown(std::string reason = "shutdown") {
    net::post(ioc_, [this, r = std::move(reason)] {
      beast::error_code ec;
      acceptor_.close(ec);
      auto all = connections_;
      for (const auto& c : all) c->close(r);
    });
  }

 private:
  friend class Connection;

  void accept() {
    acceptor_.async_accept(ioc_, [this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      std::make_shared<Connection>(std::move(socket), *this)->start();
      accept();
    });
  }

  void joined(const std::shared_ptr<Connection>& c) {
    connections_.insert(c);
    client_count_ = connections_.size();
    c->send(wire::Kind::Hello, wire::hello_payload());
    if (current_) {
      if (auto f = current_()) c->send(wire::Kind::Frame, *f);
    }
  }

  void left(const std::shared_ptr<Connection>& c) {
    connections_.erase(c);
    client_count_ = connections_.size();
  }

  void received(std::string_view text, std::uint64_t& in_seq) {
    try {
      const auto m = wire::decode(text);
      if (m.seq <= in_seq) throw ParseError("sequence number did not increase");
      in_seq = m.seq;
      if (m.kind == wire::Kind::Touch && on_touch_) on_touch_(wire::touch_payload(m));
    } catch (const Error&) {
      ++rejected_;
    } catch (const nlohmann::json::exception&) {
      ++rejected_;
    }
  }

  net::io_context& ioc_;
  tcp::acceptor acceptor_;
  CurrentFrame current_;
  OnTouch on_touch_;
  unsigned short port_ = 0;
  std::set<std::shared_ptr<Connection>> connections_;
  std::atomic<std::size_t> client_count_{0};
  std::atomic<std::uint64_t> rejected_{0};
};

inline void Connection::start() {
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept(beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
}

inline void Connection::on_accept(beast::error_code ec) {
  if (ec) return;
  open_ = true;
  server_->joined(shared_from_this());
  read();
}

inline void Connection::send(wire::Kind kind, const wire::ojson& payload) {
  if (!open_ || closing_) return;
  outbox_.push_back(wire::encode({kind, ++out_seq_, payload}));
  flush();
}

inline void Connection::flush() {
  if (writing_ || outbox_.empty()) return;
  writing_ = true;
  ws_.text(true);
  ws_.async_write(net::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
    self->writing_ = false;
    self->outbox_.pop_front();
    if (ec) {
      self->drop();
      return;
    }
    if (self->outbox_.empty() && self->closing_) {
      self->ws_.async_close(websocket::close_code::normal, [self](beast::error_code) { self->drop(); });
      return;
    }
    self->flush();
  });
}

inline void Connection::close(std::string_view reason) {
  if (!open_ || closing_) return;
  outbox_.push_back(wire::encode({wire::Kind::Bye, ++out_seq_, wire::bye_payload(reason)}));
  closing_ = true;
  flush();
}

inline void Connection::read() {
  ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
}

inline void Connection::on_read(beast::error_code ec, std::size_t) {
  if (ec) {
    drop();
    return;
  }
  const auto text = beast::buffers_to_string(buffer_.data());
  buffer_.consume(buffer_.size());
  server_->received(text, in_seq_);
  read();
}

inline void Connection::drop() {
  if (!open_) return;
  open_ = false;
  server_->left(shared_from_this());
}

}  // namespace wearsim::ws
