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

#ifndef SPEKE_WIRE_HPP
#define SPEKE_WIRE_HPP

#include "speke/protocol.hpp"

// Socket wire format. A frame is a 4-octet big-endian payload length
// followed by the payload: one kind octet (0x01 EXCHANGE, 0x02 CONFIRM) and
// the codec encodings of the message fields in order.

namespace speke {

inline constexpr std::uint8_t kWireKindExchange = 0x01;
inline constexpr std::uint8_t kWireKindConfirm = 0x02;

/// Maximum accepted payload size; anything larger is rejected as a frame
/// error before allocation.
inline constexpr std::size_t kMaxFramePayload = 1 << 20;

ByteString encode_payload(const Message& msg);

/// Inverse of encode_payload. Trailing bytes, bad kinds or malformed fields
/// raise FrameError.
Message decode_payload(std::span<const std::uint8_t> payload, const GroupParamsPtr& params);

/// Payload wrapped in the 4-octet length header.
ByteString encode_frame(const Message& msg);

/// Parses one complete frame from the front of `buffer`. Returns the number
/// of bytes consumed and the message, or nullopt if the buffer does not yet
/// hold a full frame.
std::optional<std::pair<std::size_t, Message>> try_decode_frame(
    std::span<const std::uint8_t> buffer, const GroupParamsPtr& params);

} // namespace speke

#endif // SPEKE_WIRE_HPP
