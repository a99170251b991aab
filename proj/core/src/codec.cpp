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

#include "speke/codec.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace speke {

std::string to_hex(std::span<const std::uint8_t> data)
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0F]);
  }
  return out;
}

ByteString from_hex(std::string_view hex)
{
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw SpekeError(ErrorCode::FrameError, "odd-length hex string");
  }
  ByteString out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw SpekeError(ErrorCode::FrameError, "non-hex character");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

ByteString encode_element(const GroupElement& x)
{
  return bytes_from_mpz(x.value, x.params->element_width);
}

GroupElement decode_element(std::span<const std::uint8_t> bytes, const GroupParamsPtr& params)
{
  if (bytes.size() != params->element_width) {
    throw SpekeError(ErrorCode::FrameError, "element encoding has the wrong width");
  }
  mpz_class v = mpz_from_bytes(bytes);
  if (v >= params->p) {
    throw SpekeError(ErrorCode::FrameError, "element value out of [0, p)");
  }
  return GroupElement{std::move(v), params};
}

ByteString encode_identity(std::string_view id)
{
  if (id.empty()) {
    throw SpekeError(ErrorCode::EmptyIdentity, "identity must be non-empty");
  }
  if (id.size() > 0xFFFF) {
    throw SpekeError(ErrorCode::IdentityTooLong, "identity exceeds 65535 octets");
  }
  ByteString out;
  out.reserve(2 + id.size());
  out.push_back(static_cast<std::uint8_t>(id.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(id.size() & 0xFF));
  append(out, std::span(reinterpret_cast<const std::uint8_t*>(id.data()), id.size()));
  return out;
}

Digest hash(const ByteString& data)
{
  Digest out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

Digest kdf(const ByteString& data, std::string_view context_tag)
{
  ByteString preimage = to_bytes(context_tag);
  append(preimage, data);
  return hash(preimage);
}

Digest mac(const Digest& key, const ByteString& data)
{
  Digest out{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
       out.data(), &len);
  return out;
}

} // namespace speke
