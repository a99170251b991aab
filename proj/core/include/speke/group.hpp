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

#ifndef SPEKE_GROUP_HPP
#define SPEKE_GROUP_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <span>

#include <gmpxx.h>

#include "speke/bytes.hpp"
#include "speke/errors.hpp"

namespace speke {

/// A validated safe-prime group: p = 2q+1 with p, q prime.
///
/// element_width is the byte length of the canonical fixed-width element
/// encoding, i.e. ceil(bitlen(p) / 8). Instances are immutable and shared.
struct GroupParams {
  mpz_class p;
  mpz_class q;
  std::size_t element_width;
};

using GroupParamsPtr = std::shared_ptr<const GroupParams>;

/// An integer in [0, p), tied to its owning group.
struct GroupElement {
  mpz_class value;
  GroupParamsPtr params;

  friend bool operator==(const GroupElement& a, const GroupElement& b)
  {
    return a.value == b.value;
  }
};

/// An exponent in [1, q-1].
struct Scalar {
  mpz_class value;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value == b.value; }
};

/// Deterministic byte source. Implementations must produce the same stream
/// for the same construction arguments; the whole simulation rests on that.
class RandomSource {
public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// std::mt19937_64-backed source. The engine is fully specified by the
/// standard, so streams are reproducible across platforms. Words are
/// consumed big-endian, one byte at a time.
class Mt19937Source final : public RandomSource {
public:
  explicit Mt19937Source(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

private:
  std::mt19937_64 engine_;
  std::uint8_t buffer_[8];
  std::size_t buffered_ = 0;
};

/// Fixed byte script for tests that need to force specific scalars.
/// Throws RngExhausted when the script runs out.
class ScriptedSource final : public RandomSource {
public:
  explicit ScriptedSource(ByteString script) : script_(std::move(script)) {}
  void fill(std::span<std::uint8_t> out) override;

private:
  ByteString script_;
  std::size_t pos_ = 0;
};

// Big-endian conversions between octet strings and integers.
mpz_class mpz_from_bytes(std::span<const std::uint8_t> bytes);
ByteString bytes_from_mpz(const mpz_class& value, std::size_t width);

/// Checks p = 2q+1 and runs a probabilistic primality test on both values
/// with error probability below 2^-64.
GroupParamsPtr validate_group(const mpz_class& p, const mpz_class& q);

/// g = s^2 mod p, with the password bytes read as a big-endian integer.
/// Results 0 and 1 are rejected as DegenerateGenerator.
GroupElement derive_generator_original(const ByteString& password, const GroupParamsPtr& params);

/// g = (H(s))^2 mod p, the hardened derivation used by the standards-track
/// variants. Same degeneracy rule as the original derivation.
GroupElement derive_generator_hashed(const ByteString& password, const GroupParamsPtr& params);

/// True iff 2 <= x <= p-2. Pure predicate; callers abort the session on false.
bool validate_element_range(const GroupElement& x);

/// base^e mod p via a constant-time-with-respect-to-e ladder.
GroupElement exp(const GroupElement& base, const Scalar& e);

/// Uniform scalar in [1, q-1] by rejection sampling from the source.
Scalar sample_scalar(RandomSource& rng, const GroupParams& params);

} // namespace speke

#endif // SPEKE_GROUP_HPP
