#include "nwalign/socket.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

namespace nwalign {

namespace {

using Clock = std::chrono::steady_clock;

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head != nullptr) freeaddrinfo(head);
  }
};

AddrInfo resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = passive ? AI_PASSIVE : 0;
  AddrInfo out;
  const std::string port = std::to_string(ep.port);
  if (const int rc = getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &out.head); rc != 0) {
    throw InputError("cannot resolve " + ep.to_string() + ": " + gai_strerror(rc));
  }
  return out;
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left <= 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

}  // namespace

Endpoint Endpoint::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw InputError("expected host:port, got '" + text + "'");
  }
  Endpoint ep;
  ep.host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  unsigned long value = 0;
  try {
    std::size_t used = 0;
    value = std::stoul(port, &used);
    if (used != port.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("bad port in '" + text + "'");
  }
  if (value > 65535) throw InputError("port out of range in '" + text + "'");
  ep.port = static_cast<std::uint16_t>(value);
  return ep;
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

Socket Socket::connect(const Endpoint& to, std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  AddrInfo ai = resolve(to, false);
  Socket s(::socket(ai.head->ai_family, ai.head->ai_socktype | SOCK_CLOEXEC, ai.head->ai_protocol));
  if (!s.valid()) throw ProtocolError(errno_text("socket"));

  const int flags = ::fcntl(s.fd(), F_GETFL);
  ::fcntl(s.fd(), F_SETFL, flags | O_NONBLOCK);
  if (::connect(s.fd(), ai.head->ai_addr, ai.head->ai_addrlen) != 0) {
    if (errno != EINPROGRESS) throw ProtocolError(errno_text(("connect " + to.to_string()).c_str()));
    pollfd p{s.fd(), POLLOUT, 0};
    if (::poll(&p, 1, remaining_ms(deadline)) <= 0) {
      throw ProtocolError("connect " + to.to_string() + ": timed out");
    }
    int err = 0;
    socklen_t len = sizeof err;
    ::getsockopt(s.fd(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) throw ProtocolError("connect " + to.to_string() + ": " + std::strerror(err));
  }
  ::fcntl(s.fd(), F_SETFL, flags);
  const int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

void Socket::send_all(std::span<const std::uint8_t> bytes) {
  while (!bytes.empty()) {
    const ssize_t sent = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (sent < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(errno_text("send"));
    }
    bytes = bytes.subspan(static_cast<std::size_t>(sent));
  }
}

void Socket::recv_exact(std::span<std::uint8_t> out, std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  while (!out.empty()) {
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(errno_text("poll"));
    }
    if (ready == 0) throw ProtocolError("timed out after " + std::to_string(timeout.count()) + " ms");
    const ssize_t got = ::recv(fd_, out.data(), out.size(), 0);
    if (got == 0) throw ProtocolError("connection closed by peer");
    if (got < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw ProtocolError(errno_text("recv"));
    }
    out = out.subspan(static_cast<std::size_t>(got));
  }
}

void send_frame(Socket& sock, wire::FrameType type, std::span<const std::uint8_t> payload) {
  sock.send_all(wire::encode_frame(type, payload));
}

wire::Frame recv_frame(Socket& sock, std::chrono::milliseconds timeout) {
  std::array<std::uint8_t, wire::kHeaderSize> header{};
  sock.recv_exact(header, timeout);
  const wire::FrameHeader h = wire::decode_header(header);
  wire::Frame frame{h.type, wire::Bytes(h.payload_length)};
  sock.recv_exact(frame.payload, timeout);
  return frame;
}

WorkerServer::WorkerServer(const Endpoint& listen_on, std::chrono::milliseconds idle_timeout)
    : idle_timeout_(idle_timeout) {
  AddrInfo ai = resolve(listen_on, true);
  listener_ = Socket(::socket(ai.head->ai_family, ai.head->ai_socktype | SOCK_CLOEXEC, ai.head->ai_protocol));
  if (!listener_.valid()) throw ProtocolError(errno_text("socket"));
  const int one = 1;
  ::setsockopt(listener_.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(listener_.fd(), ai.head->ai_addr, ai.head->ai_addrlen) != 0) {
    throw ProtocolError(errno_text(("bind " + listen_on.to_string()).c_str()));
  }
  if (::listen(listener_.fd(), 16) != 0) throw ProtocolError(errno_text("listen"));

  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  ::getsockname(listener_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
  bound_.host = listen_on.host;
  bound_.port = ntohs(addr.sin_port);
}

void WorkerServer::serve(std::size_t max_sessions) {
  while (!stopping_.load()) {
    pollfd p{listener_.fd(), POLLIN, 0};
    if (::poll(&p, 1, 50) <= 0) continue;
    Socket conn(::accept4(listener_.fd(), nullptr, nullptr, SOCK_CLOEXEC));
    if (!conn.valid()) continue;
    const int one = 1;
    ::setsockopt(conn.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    session(std::move(conn));
    if (++served_ == max_sessions) return;
  }
}

void WorkerServer::session(Socket conn) {
  using wire::FrameType;
  auto fail = [&conn](const std::string& text) {
    try {
      send_frame(conn, FrameType::Error, wire::encode_error(text));
    } catch (const Error&) {
      // peer already gone
    }
  };

  try {
    const wire::Frame hello = recv_frame(conn, idle_timeout_);
    if (hello.type != FrameType::Hello) return fail("expected HELLO");
    const SessionConfig cfg = wire::decode_hello(hello.payload);
    cfg.scheme.validate();
    cfg.engine.wavefront.validate();
    send_frame(conn, FrameType::Hello, {});

    for (;;) {
      const wire::Frame frame = recv_frame(conn, idle_timeout_);
      switch (frame.type) {
        case FrameType::Work: {
          const ResultMessage result = process_work(wire::decode_work(frame.payload), cfg);
          send_frame(conn, FrameType::Result, wire::encode_result(result));
          break;
        }
        case FrameType::Shutdown:
          return;
        default:
          return fail("unexpected frame type " + std::to_string(static_cast<int>(frame.type)));
      }
    }
  } catch (const Error& e) {
    fail(e.what());
  }
}

namespace {

wire::Frame expect(Socket& s, wire::FrameType type, std::chrono::milliseconds timeout) {
  wire::Frame f = recv_frame(s, timeout);
  if (f.type == wire::FrameType::Error) throw ProtocolError("worker reported: " + wire::decode_error(f.payload));
  if (f.type != type) {
    throw ProtocolError("unexpected frame type " + std::to_string(static_cast<int>(f.type)));
  }
  return f;
}

}  // namespace

ResultMessage run_remote_chunk(const Endpoint& worker, const SessionConfig& cfg, const WorkMessage& work,
                               std::chrono::milliseconds timeout) {
  using wire::FrameType;
  Socket s = Socket::connect(worker, timeout);
  send_frame(s, FrameType::Hello, wire::encode_hello(cfg));
  expect(s, FrameType::Hello, timeout);
  send_frame(s, FrameType::Work, wire::encode_work(work));
  ResultMessage result = wire::decode_result(expect(s, FrameType::Result, timeout).payload);
  try {
    send_frame(s, FrameType::Shutdown, {});
  } catch (const ProtocolError&) {
    // the result is already in hand
  }
  return result;
}

}  // namespace nwalign
