/*
 * Copyright 2026 the speke-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SPEKE_TOOLS_NET_HPP
#define SPEKE_TOOLS_NET_HPP

#include <cstdint>
#include <string>

#include "speke/wire.hpp"

// Minimal blocking TCP plumbing for the serve/connect demo: one frame stream
// per connection, no concurrency.

namespace speke_cli {

struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};

/// Parses "host:port". The host part may be empty (meaning 0.0.0.0 for
/// listeners) and the port may be 0 (pick an ephemeral port).
HostPort parse_host_port(const std::string& address);

class Socket {
public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

private:
  int fd_ = -1;
};

/// Bound and listening socket; resolves port 0 to a concrete port.
Socket tcp_listen(const HostPort& where, std::uint16_t* bound_port);

Socket tcp_accept(const Socket& listener);

Socket tcp_connect(const HostPort& where);

void send_frame(const Socket& sock, const speke::Message& msg);

/// Blocks until one full frame arrives. Throws FrameError on EOF, short
/// reads or malformed payloads.
speke::Message recv_frame(const Socket& sock, const speke::GroupParamsPtr& params);

} // namespace speke_cli

#endif // SPEKE_TOOLS_NET_HPP
