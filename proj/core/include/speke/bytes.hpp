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

#ifndef SPEKE_BYTES_HPP
#define SPEKE_BYTES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace speke {

using ByteString = std::vector<std::uint8_t>;

/// Fixed-width output of the 256-bit hash used throughout the project.
inline constexpr std::size_t kDigestSize = 32;
using Digest = std::array<std::uint8_t, kDigestSize>;

inline ByteString to_bytes(std::string_view s)
{
  return ByteString(s.begin(), s.end());
}

inline ByteString to_bytes(const Digest& d)
{
  return ByteString(d.begin(), d.end());
}

inline void append(ByteString& out, std::span<const std::uint8_t> more)
{
  out.insert(out.end(), more.begin(), more.end());
}

inline void append(ByteString& out, std::uint8_t b)
{
  out.push_back(b);
}

std::string to_hex(std::span<const std::uint8_t> data);

/// Inverse of to_hex; rejects odd-length or non-hex input.
ByteString from_hex(std::string_view hex);

} // namespace speke

#endif // SPEKE_BYTES_HPP
