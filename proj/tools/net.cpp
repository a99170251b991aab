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

#include "net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

namespace speke_cli {

using speke::ErrorCode;
using speke::SpekeError;

HostPort parse_host_port(const std::string& address)
{
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) {
    throw SpekeError(ErrorCode::FrameError, "address must be host:port");
  }
  HostPort hp;
  hp.host = address.substr(0, colon);
  const std::string port_str = address.substr(colon + 1);
  try {
    const unsigned long port = std::stoul(port_str);
    if (port > 0xFFFF) throw std::out_of_range("port");
    hp.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    throw SpekeError(ErrorCode::FrameError, "bad port '" + port_str + "'");
  }
  return hp;
}

Socket::~Socket()
{
  if (fd_ >= 0) ::close(fd_);
}

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_)
{
  other.fd_ = -1;
}

Socket& Socket::operator=(Socket&& other) noexcept
{
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

namespace {

sockaddr_in make_addr(const HostPort& where, bool for_listen)
{
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(where.port);
  if (where.host.empty()) {
    addr.sin_addr.s_addr = for_listen ? INADDR_ANY : htonl(INADDR_LOOPBACK);
  } else if (::inet_pton(AF_INET, where.host.c_str(), &addr.sin_addr) != 1) {
    throw SpekeError(ErrorCode::FrameError, "bad IPv4 address '" + where.host + "'");
  }
  return addr;
}

} // namespace

Socket tcp_listen(const HostPort& where, std::uint16_t* bound_port)
{
  Socket sock(::socket(AF_INET, SOCK_STREAM, 0));
  if (!sock.valid()) {
    throw SpekeError(ErrorCode::FrameError, "socket() failed");
  }
  const int one = 1;
  ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr = make_addr(where, true);
  if (::bind(sock.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw SpekeError(ErrorCode::FrameError,
                     "bind failed: " + std::string(std::strerror(errno)));
  }
  if (::listen(sock.fd(), 1) != 0) {
    throw SpekeError(ErrorCode::FrameError, "listen failed");
  }
  if (bound_port != nullptr) {
    sockaddr_in actual{};
    socklen_t len = sizeof(actual);
    ::getsockname(sock.fd(), reinterpret_cast<sockaddr*>(&actual), &len);
    *bound_port = ntohs(actual.sin_port);
  }
  return sock;
}

Socket tcp_accept(const Socket& listener)
{
  const int fd = ::accept(listener.fd(), nullptr, nullptr);
  if (fd < 0) {
    throw SpekeError(ErrorCode::FrameError, "accept failed");
  }
  return Socket(fd);
}

Socket tcp_connect(const HostPort& where)
{
  Socket sock(::socket(AF_INET, SOCK_STREAM, 0));
  if (!sock.valid()) {
    throw SpekeError(ErrorCode::FrameError, "socket() failed");
  }
  sockaddr_in addr = make_addr(where, false);
  if (::connect(sock.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw SpekeError(ErrorCode::FrameError,
                     "connect failed: " + std::string(std::strerror(errno)));
  }
  return sock;
}

namespace {

void write_all(int fd, const speke::ByteString& bytes)
{
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, 0);
    if (n <= 0) {
      throw SpekeError(ErrorCode::FrameError, "send failed");
    }
    sent += static_cast<std::size_t>(n);
  }
}

speke::ByteString read_exact(int fd, std::size_t want)
{
  speke::ByteString out(want);
  std::size_t got = 0;
  while (got < want) {
    const ssize_t n = ::recv(fd, out.data() + got, want - got, 0);
    if (n == 0) {
      throw SpekeError(ErrorCode::FrameError, "connection closed mid-frame");
    }
    if (n < 0) {
      throw SpekeError(ErrorCode::FrameError, "recv failed");
    }
    got += static_cast<std::size_t>(n);
  }
  return out;
}

} // namespace

void send_frame(const Socket& sock, const speke::Message& msg)
{
  write_all(sock.fd(), speke::encode_frame(msg));
}

speke::Message recv_frame(const Socket& sock, const speke::GroupParamsPtr& params)
{
  const speke::ByteString header = read_exact(sock.fd(), 4);
  const std::size_t len = (std::size_t(header[0]) << 24) | (std::size_t(header[1]) << 16) |
                          (std::size_t(header[2]) << 8) | std::size_t(header[3]);
  if (len > speke::kMaxFramePayload) {
    throw SpekeError(ErrorCode::FrameError, "frame payload exceeds the size cap");
  }
  const speke::ByteString payload = read_exact(sock.fd(), len);
  return speke::decode_payload(payload, params);
}

} // namespace speke_cli
