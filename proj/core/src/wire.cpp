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

#include "speke/wire.hpp"

namespace speke {

ByteString encode_payload(const Message& msg)
{
  ByteString out;
  if (const auto* ex = std::get_if<ExchangeMessage>(&msg)) {
    append(out, kWireKindExchange);
    append(out, encode_identity(ex->sender));
    append(out, encode_element(ex->element));
  } else {
    const auto& cm = std::get<ConfirmMessage>(msg);
    append(out, kWireKindConfirm);
    append(out, std::span<const std::uint8_t>(cm.tag));
  }
  return out;
}

Message decode_payload(std::span<const std::uint8_t> payload, const GroupParamsPtr& params)
{
  if (payload.empty()) {
    throw SpekeError(ErrorCode::FrameError, "empty payload");
  }
  const std::uint8_t kind = payload[0];
  payload = payload.subspan(1);

  if (kind == kWireKindExchange) {
    if (payload.size() < 2) {
      throw SpekeError(ErrorCode::FrameError, "truncated identity length");
    }
    const std::size_t id_len = (std::size_t(payload[0]) << 8) | payload[1];
    payload = payload.subspan(2);
    if (id_len == 0) {
      throw SpekeError(ErrorCode::FrameError, "empty sender identity");
    }
    if (payload.size() < id_len) {
      throw SpekeError(ErrorCode::FrameError, "truncated sender identity");
    }
    std::string sender(reinterpret_cast<const char*>(payload.data()), id_len);
    payload = payload.subspan(id_len);
    if (payload.size() != params->element_width) {
      throw SpekeError(ErrorCode::FrameError, "element width mismatch");
    }
    return ExchangeMessage{std::move(sender), decode_element(payload, params)};
  }

  if (kind == kWireKindConfirm) {
    if (payload.size() != kDigestSize) {
      throw SpekeError(ErrorCode::FrameError, "confirmation tag must be 32 octets");
    }
    ConfirmMessage cm;
    std::copy(payload.begin(), payload.end(), cm.tag.begin());
    return cm;
  }

  throw SpekeError(ErrorCode::FrameError, "unknown message kind");
}

ByteString encode_frame(const Message& msg)
{
  const ByteString payload = encode_payload(msg);
  ByteString out;
  out.reserve(4 + payload.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    append(out, static_cast<std::uint8_t>((payload.size() >> shift) & 0xFF));
  }
  append(out, payload);
  return out;
}

std::optional<std::pair<std::size_t, Message>> try_decode_frame(
    std::span<const std::uint8_t> buffer, const GroupParamsPtr& params)
{
  if (buffer.size() < 4) {
    return std::nullopt;
  }
  const std::size_t len = (std::size_t(buffer[0]) << 24) | (std::size_t(buffer[1]) << 16) |
                          (std::size_t(buffer[2]) << 8) | std::size_t(buffer[3]);
  if (len > kMaxFramePayload) {
    throw SpekeError(ErrorCode::FrameError, "frame payload exceeds the size cap");
  }
  if (buffer.size() - 4 < len) {
    return std::nullopt;
  }
  Message msg = decode_payload(buffer.subspan(4, len), params);
  return std::make_pair(4 + len, std::move(msg));
}

} // namespace speke
