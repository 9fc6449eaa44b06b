/* Copyright 2026 The Sigforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "sigforge/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "json_codec.hpp"
#include "sigforge/error.hpp"

namespace sigforge::net {
namespace {

// False on EOF or error.
bool read_exact(int fd, void* buf, std::size_t n) {
  auto* p = static_cast<char*>(buf);
  while (n > 0) {
    const ssize_t r = ::recv(fd, p, n, 0);
    if (r == 0) return false;
    if (r < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    p += r;
    n -= static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, std::string_view bytes) {
  const char* p = bytes.data();
  std::size_t n = bytes.size();
  while (n > 0) {
    const ssize_t w = ::send(fd, p, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    p += w;
    n -= static_cast<std::size_t>(w);
  }
  return true;
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Server::Server(ServerOptions options) : options_(std::move(options)) {}

Server::~Server() { stop(); }

void Server::start() {
  if (running_) return;
  pool_ = std::make_unique<ThreadPool>(resolve_workers(options_.workers));
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw IoError("socket: " + errno_text());
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw IoError("invalid bind address " + options_.bind_address);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(listen_fd_, 64) != 0) {
    const std::string why = errno_text();
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw IoError("bind/listen on port " + std::to_string(options_.port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  listen_fd_ = -1;
  if (acceptor_.joinable()) acceptor_.join();
  std::list<std::unique_ptr<Connection>> conns;
  {
    std::lock_guard lock(conns_mutex_);
    for (auto& c : conns_) ::shutdown(c->fd, SHUT_RDWR);
    conns.swap(conns_);
  }
  for (auto& c : conns) {
    if (c->thread.joinable()) c->thread.join();
    ::close(c->fd);
  }
  pool_.reset();
}

void Server::reap_finished() {
  std::lock_guard lock(conns_mutex_);
  for (auto it = conns_.begin(); it != conns_.end();) {
    if ((*it)->finished) {
      (*it)->thread.join();
      ::close((*it)->fd);
      it = conns_.erase(it);
    } else {
      ++it;
    }
  }
}

void Server::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    reap_finished();
    auto conn = std::make_unique<Connection>();
    conn->fd = fd;
    Connection* raw = conn.get();
    std::lock_guard lock(conns_mutex_);
    if (!running_) {
      ::close(fd);
      return;
    }
    conns_.push_back(std::move(conn));
    raw->thread = std::thread([this, raw] {
      serve(*raw);
      ::shutdown(raw->fd, SHUT_RDWR);
      raw->finished = true;
    });
  }
}

void Server::serve(Connection& conn) {
  const auto reply_error = [&](std::string_view message) {
    return write_all(conn.fd, encode_message(MessageType::kError, error_payload(message)));
  };
  for (;;) {
    std::array<std::uint8_t, kHeaderSize> raw{};
    if (!read_exact(conn.fd, raw.data(), raw.size())) return;
    WireHeader header;
    try {
      header = decode_header(raw);
    } catch (const ProtocolError& e) {
      reply_error(e.what());
      return;
    }
    if (header.type != MessageType::kRequest) {
      reply_error("expected a request message");
      return;
    }
    if (header.length > kMaxRequestPayload) {
      reply_error("request payload exceeds " + std::to_string(kMaxRequestPayload) + " bytes");
      return;
    }
    std::string payload(header.length, '\0');
    if (!read_exact(conn.fd, payload.data(), payload.size())) return;
    std::string response;
    try {
      const BatchRequest request = parse_batch_request(payload);
      response = encode_message(MessageType::kResponse, build_batch_response(request, pool_.get()));
    } catch (const Error& e) {
      if (!reply_error(e.what())) return;
      continue;
    }
    if (!write_all(conn.fd, response)) return;
  }
}

Client::Client(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0 || res == nullptr) {
    throw IoError("cannot resolve " + host);
  }
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  const bool ok = fd_ >= 0 && ::connect(fd_, res->ai_addr, res->ai_addrlen) == 0;
  ::freeaddrinfo(res);
  if (!ok) {
    const std::string why = errno_text();
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
    throw IoError("cannot connect to " + host + ":" + service + ": " + why);
  }
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

Client::~Client() {
  if (fd_ >= 0) ::close(fd_);
}

void Client::send_raw(std::string_view bytes) {
  if (!write_all(fd_, bytes)) throw IoError("send failed: " + errno_text());
}

std::pair<WireHeader, std::string> Client::receive() {
  std::array<std::uint8_t, kHeaderSize> raw{};
  if (!read_exact(fd_, raw.data(), raw.size())) throw IoError("connection closed");
  const WireHeader header = decode_header(raw);
  std::string payload(header.length, '\0');
  if (!read_exact(fd_, payload.data(), payload.size())) throw IoError("connection closed mid-payload");
  return {header, std::move(payload)};
}

std::string Client::request_payload(const BatchRequest& request) {
  send_raw(encode_message(MessageType::kRequest, batch_request_to_json(request)));
  auto [header, payload] = receive();
  if (header.type == MessageType::kError) {
    std::string message = payload;
    try {
      message = detail::Json::parse(payload).at("error").get<std::string>();
    } catch (const detail::Json::exception&) {
    }
    throw ProtocolError("server error: " + message);
  }
  if (header.type != MessageType::kResponse) throw ProtocolError("unexpected message type");
  return std::move(payload);
}

BatchResponse Client::request(const BatchRequest& request) {
  return parse_batch_response(request_payload(request));
}

}  // namespace sigforge::net
