#pragma once

// TCP transport for the distributor. A WorkerServer is one rank: it accepts
// a coordinator connection, takes a HELLO carrying the session config, then
// answers WORK frames with RESULT frames until SHUTDOWN.

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "nwalign/distributor.hpp"
#include "nwalign/wire.hpp"

namespace nwalign {

// Owning socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) noexcept : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  int fd() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }

  static Socket connect(const Endpoint& to, std::chrono::milliseconds timeout);

  void send_all(std::span<const std::uint8_t> bytes);
  // Reads exactly out.size() bytes or throws (ProtocolError on EOF or timeout).
  void recv_exact(std::span<std::uint8_t> out, std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
};

void send_frame(Socket& sock, wire::FrameType type, std::span<const std::uint8_t> payload);

// Throws ProtocolError for a malformed header, EOF or a timeout.
wire::Frame recv_frame(Socket& sock, std::chrono::milliseconds timeout);

class WorkerServer {
 public:
  // Binds and listens immediately; port 0 picks an ephemeral port.
  explicit WorkerServer(const Endpoint& listen_on,
                        std::chrono::milliseconds idle_timeout = std::chrono::minutes(10));

  // The bound address, with the real port filled in.
  Endpoint endpoint() const noexcept { return bound_; }

  // Runs sessions one after another until stop() is called or max_sessions
  // sessions have finished (0 means no limit).
  void serve(std::size_t max_sessions = 0);
  void stop() noexcept { stopping_.store(true); }

  std::size_t sessions_served() const noexcept { return served_.load(); }

 private:
  void session(Socket conn);

  Socket listener_;
  Endpoint bound_;
  std::chrono::milliseconds idle_timeout_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> served_{0};
};

// Coordinator side of one session: HELLO, WORK, RESULT, SHUTDOWN. An ERROR
// frame from the worker is rethrown as ProtocolError carrying its text.
ResultMessage run_remote_chunk(const Endpoint& worker, const SessionConfig& cfg, const WorkMessage& work,
                               std::chrono::milliseconds timeout);

}  // namespace nwalign
