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

#ifndef SPEKE_CODEC_HPP
#define SPEKE_CODEC_HPP

#include <string_view>

#include "speke/bytes.hpp"
#include "speke/group.hpp"

// Canonical byte encodings for every hash/KDF/MAC input. All encodings are
// self-delimiting (length-prefixed strings, fixed-width elements, one-octet
// literal tags), so concatenations cannot be reparsed ambiguously.

namespace speke {

/// Fixed-width big-endian encoding of a group element; width comes from the
/// owning group. Injective over [0, p).
ByteString encode_element(const GroupElement& x);

/// Inverse of encode_element; rejects values >= p.
GroupElement decode_element(std::span<const std::uint8_t> bytes, const GroupParamsPtr& params);

/// 2-octet big-endian length prefix followed by the UTF-8 bytes. Empty
/// strings are rejected as EmptyIdentity, strings over 65535 octets as
/// IdentityTooLong.
ByteString encode_identity(std::string_view id);

/// SHA-256. The hash algorithm is fixed for the whole project.
Digest hash(const ByteString& data);

/// Tagged hash used as the key derivation function: hash(tag || data).
/// Use tag "SK" for session keys and "KC" for confirmation keys.
Digest kdf(const ByteString& data, std::string_view context_tag);

/// HMAC-SHA-256.
Digest mac(const Digest& key, const ByteString& data);

} // namespace speke

#endif // SPEKE_CODEC_HPP
