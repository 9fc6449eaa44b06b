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

#ifndef SIGFORGE_SERVER_HPP_
#define SIGFORGE_SERVER_HPP_

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "sigforge/protocol.hpp"
#include "sigforge/thread_pool.hpp"

namespace sigforge::net {

struct ServerOptions {
  std::string bind_address = "127.0.0.1";
  std::uint16_t port = 0;              // 0 picks an ephemeral port
  std::optional<std::size_t> workers;  // generation pool size
};

// Blocking TCP batch server: one thread per connection, one shared
// generation pool, one batch in flight per connection. Framing errors get a
// type-255 reply and close the connection; request errors get a type-255
// reply and the connection stays open.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts accepting. Throws IoError on socket failures.
  void start();
  std::uint16_t port() const noexcept { return port_; }
  // Closes the listener and every connection, then joins all threads.
  void stop();

 private:
  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> finished{false};
  };

  void accept_loop();
  void serve(Connection& conn);
  void reap_finished();

  ServerOptions options_;
  std::unique_ptr<ThreadPool> pool_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::thread acceptor_;
  std::atomic<bool> running_{false};
  std::mutex conns_mutex_;
  std::list<std::unique_ptr<Connection>> conns_;
};

// Minimal blocking client.
class Client {
 public:
  // Throws IoError when the connection fails.
  Client(const std::string& host, std::uint16_t port);
  ~Client();
  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  void send_raw(std::string_view bytes);
  // Reads one message. Throws IoError on EOF, ProtocolError on bad framing.
  std::pair<WireHeader, std::string> receive();
  // Sends a request and parses the response; a type-255 reply becomes a
  // ProtocolError carrying the server's message.
  std::string request_payload(const BatchRequest& request);
  BatchResponse request(const BatchRequest& request);

 private:
  int fd_ = -1;
};

}  // namespace sigforge::net

#endif  // SIGFORGE_SERVER_HPP_
