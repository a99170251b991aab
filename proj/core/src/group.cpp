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

#include "speke/group.hpp"

#include <cstring>

#include "speke/codec.hpp"

namespace speke {

namespace {

// 32 Miller-Rabin rounds already give error < 4^-32 = 2^-64; a few extra
// rounds cost nothing at these sizes.
constexpr int kPrimalityRounds = 40;

bool is_probably_prime(const mpz_class& n)
{
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) != 0;
}

} // namespace

void Mt19937Source::fill(std::span<std::uint8_t> out)
{
  for (auto& b : out) {
    if (buffered_ == 0) {
      std::uint64_t word = engine_();
      for (std::size_t i = 0; i < 8; ++i) {
        buffer_[i] = static_cast<std::uint8_t>(word >> (56 - 8 * i));
      }
      buffered_ = 8;
    }
    b = buffer_[8 - buffered_];
    --buffered_;
  }
}

void ScriptedSource::fill(std::span<std::uint8_t> out)
{
  if (script_.size() - pos_ < out.size()) {
    throw SpekeError(ErrorCode::RngExhausted, "scripted random source ran out of bytes");
  }
  std::memcpy(out.data(), script_.data() + pos_, out.size());
  pos_ += out.size();
}

mpz_class mpz_from_bytes(std::span<const std::uint8_t> bytes)
{
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1 /* most significant word first */, 1, 1, 0,
               bytes.data());
  }
  return v;
}

ByteString bytes_from_mpz(const mpz_class& value, std::size_t width)
{
  ByteString out(width, 0);
  std::size_t written = 0;
  if (value != 0) {
    const std::size_t needed = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
    if (needed > width) {
      throw SpekeError(ErrorCode::FrameError, "integer does not fit in the requested width");
    }
    mpz_export(out.data() + (width - needed), &written, 1, 1, 1, 0, value.get_mpz_t());
  }
  return out;
}

GroupParamsPtr validate_group(const mpz_class& p, const mpz_class& q)
{
  if (p <= 3 || q <= 3) {
    throw SpekeError(ErrorCode::GroupTooSmall, "need p, q > 3");
  }
  if (p != 2 * q + 1) {
    throw SpekeError(ErrorCode::NotSafePrime, "p != 2q + 1");
  }
  if (!is_probably_prime(p)) {
    throw SpekeError(ErrorCode::NotPrime, "p failed the primality test");
  }
  if (!is_probably_prime(q)) {
    throw SpekeError(ErrorCode::NotPrime, "q failed the primality test");
  }
  const std::size_t width = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
  return std::make_shared<const GroupParams>(GroupParams{p, q, width});
}

namespace {

GroupElement square_to_generator(const mpz_class& base, const GroupParamsPtr& params)
{
  mpz_class g;
  mpz_powm_ui(g.get_mpz_t(), base.get_mpz_t(), 2, params->p.get_mpz_t());
  if (g == 0 || g == 1) {
    throw SpekeError(ErrorCode::DegenerateGenerator, "f(s) in {0, 1}");
  }
  return GroupElement{std::move(g), params};
}

} // namespace

GroupElement derive_generator_original(const ByteString& password, const GroupParamsPtr& params)
{
  return square_to_generator(mpz_from_bytes(password), params);
}

GroupElement derive_generator_hashed(const ByteString& password, const GroupParamsPtr& params)
{
  const Digest h = hash(password);
  return square_to_generator(mpz_from_bytes(h), params);
}

bool validate_element_range(const GroupElement& x)
{
  return x.value >= 2 && x.value <= x.params->p - 2;
}

GroupElement exp(const GroupElement& base, const Scalar& e)
{
  mpz_class r;
  // mpz_powm_sec runs in time independent of the exponent value; it requires
  // an odd modulus and a positive exponent, both guaranteed here.
  mpz_powm_sec(r.get_mpz_t(), base.value.get_mpz_t(), e.value.get_mpz_t(),
               base.params->p.get_mpz_t());
  return GroupElement{std::move(r), base.params};
}

Scalar sample_scalar(RandomSource& rng, const GroupParams& params)
{
  const std::size_t bits = mpz_sizeinbase(params.q.get_mpz_t(), 2);
  const std::size_t n_bytes = (bits + 7) / 8;
  const std::uint8_t top_mask =
      static_cast<std::uint8_t>(0xFF >> (8 * n_bytes - bits));

  ByteString buf(n_bytes);
  for (;;) {
    rng.fill(buf);
    buf[0] &= top_mask;
    mpz_class v = mpz_from_bytes(buf);
    if (v >= 1 && v <= params.q - 1) {
      return Scalar{std::move(v)};
    }
  }
}

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotSafePrime: return "NotSafePrime";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::DegenerateGenerator: return "DegenerateGenerator";
    case ErrorCode::EmptyIdentity: return "EmptyIdentity";
    case ErrorCode::IdentityTooLong: return "IdentityTooLong";
    case ErrorCode::IdentitiesEqual: return "IdentitiesEqual";
    case ErrorCode::EmptyPassword: return "EmptyPassword";
    case ErrorCode::RangeCheckFailed: return "RangeCheckFailed";
    case ErrorCode::PeerIdentityMismatch: return "PeerIdentityMismatch";
    case ErrorCode::WrongPhase: return "WrongPhase";
    case ErrorCode::ConfirmationMismatch: return "ConfirmationMismatch";
    case ErrorCode::ConfirmationDisabled: return "ConfirmationDisabled";
    case ErrorCode::DuplicateMessage: return "DuplicateMessage";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::FrameError: return "FrameError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::RngExhausted: return "RngExhausted";
  }
  return "UnknownError";
}

} // namespace speke
