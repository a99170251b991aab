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

#include <doctest.h>

#include <cmath>
#include <optional>
#include <set>

#include "speke/codec.hpp"
#include "speke/group.hpp"
#include "speke/presets.hpp"
#include "support/reference_crypto.hpp"

using namespace speke;

namespace {

GroupParamsPtr toy23()
{
  return group_preset("toy23");
}

GroupElement elt(unsigned long v, const GroupParamsPtr& params)
{
  return GroupElement{mpz_class(v), params};
}

} // namespace

TEST_CASE("validate_group accepts the toy safe-prime pair")
{
  const auto params = validate_group(23, 11);
  CHECK(params->p == 23);
  CHECK(params->q == 11);
  CHECK(params->element_width == 1);
}

TEST_CASE("validate_group rejects a broken relation")
{
  CHECK_THROWS_AS(validate_group(13, 5), SpekeError);
  try {
    validate_group(13, 5);
  } catch (const SpekeError& e) {
    CHECK(e.code() == ErrorCode::NotSafePrime);
  }
}

TEST_CASE("validate_group rejects composite members of the pair")
{
  // 15 = 2*7+1 keeps the relation but is composite.
  try {
    validate_group(15, 7);
    FAIL("15 accepted as prime");
  } catch (const SpekeError& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  // 31 = 2*15+1 is prime but its half is not.
  try {
    validate_group(31, 15);
    FAIL("15 accepted as prime");
  } catch (const SpekeError& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
}

TEST_CASE("validate_group rejects tiny groups")
{
  try {
    validate_group(7, 3);
    FAIL("tiny group accepted");
  } catch (const SpekeError& e) {
    CHECK(e.code() == ErrorCode::GroupTooSmall);
  }
}

TEST_CASE("modp2048 preset passes an independent Miller-Rabin oracle")
{
  const auto params = group_preset("modp2048");
  CHECK(params->element_width == 256);
  CHECK(params->p == 2 * params->q + 1);

  std::mt19937_64 engine(0xfeedbeef);
  CHECK(refcrypto::miller_rabin(params->p, 40, engine));
  CHECK(refcrypto::miller_rabin(params->q, 40, engine));
  // The oracle still rejects composites of the same size.
  CHECK_FALSE(refcrypto::miller_rabin(params->p + 2, 40, engine));
}

TEST_CASE("unknown preset id is rejected")
{
  CHECK_THROWS_AS(group_preset("toy29"), SpekeError);
}

TEST_CASE("original generator derivation squares the password")
{
  const auto params = toy23();
  CHECK(derive_generator_original({5}, params).value == 2); // 25 mod 23

  for (std::uint8_t s : {std::uint8_t{0}, std::uint8_t{1}, std::uint8_t{22}}) {
    CHECK_THROWS_AS(derive_generator_original({s}, params), SpekeError);
  }
}

TEST_CASE("hashed generator derivation matches the reference hash oracle")
{
  const auto params = toy23();
  const ByteString pw = to_bytes("password");
  const auto digest = refcrypto::sha256(pw);
  mpz_class d;
  mpz_import(d.get_mpz_t(), digest.size(), 1, 1, 1, 0, digest.data());
  const mpz_class expected = (d % 23) * (d % 23) % 23;

  CHECK(derive_generator_hashed(pw, params).value == expected);
}

TEST_CASE("hashed generator degenerates for digests equal to +-1 mod 23")
{
  const auto params = toy23();
  // Deterministic search over small decimal-string passwords for a digest
  // congruent to 0, 1 or -1 mod 23.
  std::optional<ByteString> degenerate;
  for (int i = 0; i < 1000 && !degenerate; ++i) {
    const ByteString candidate = to_bytes(std::to_string(i));
    const auto digest = refcrypto::sha256(candidate);
    mpz_class d;
    mpz_import(d.get_mpz_t(), digest.size(), 1, 1, 1, 0, digest.data());
    const mpz_class residue = d % 23;
    if (residue == 0 || residue == 1 || residue == 22) {
      degenerate = candidate;
    }
  }
  REQUIRE(degenerate.has_value());
  CHECK_THROWS_AS(derive_generator_hashed(*degenerate, params), SpekeError);
}

TEST_CASE("hashing the password breaks exponential equivalence")
{
  // For g = s^2 the relation f(s^r) = f(s)^r always holds; the hashed
  // derivation must break it for at least one (s, r) pair in the toy group.
  const auto params = toy23();
  bool relation_broken = false;
  for (unsigned long s = 2; s <= 21 && !relation_broken; ++s) {
    for (unsigned long r = 2; r <= 9 && !relation_broken; ++r) {
      const unsigned long s_pow_r = refcrypto::modpow(s, r, 23);
      const ByteString s_bytes{static_cast<std::uint8_t>(s)};
      const ByteString sp_bytes{static_cast<std::uint8_t>(s_pow_r)};
      try {
        const GroupElement f_s = derive_generator_hashed(s_bytes, params);
        const GroupElement f_sp = derive_generator_hashed(sp_bytes, params);
        if (f_sp.value != exp(f_s, Scalar{mpz_class(r)}).value) {
          relation_broken = true;
        }
      } catch (const SpekeError&) {
        // degenerate candidate, skip
      }
    }
  }
  CHECK(relation_broken);

  // And the unhashed derivation respects the relation everywhere it is
  // defined, which is exactly what the attack exploits.
  for (unsigned long s = 2; s <= 21; ++s) {
    for (unsigned long r = 2; r <= 9; ++r) {
      const unsigned long s_pow_r = refcrypto::modpow(s, r, 23);
      if (s_pow_r <= 1 || s_pow_r == 22) continue;
      const GroupElement f_s = derive_generator_original({static_cast<std::uint8_t>(s)}, params);
      const GroupElement f_sp =
          derive_generator_original({static_cast<std::uint8_t>(s_pow_r)}, params);
      CHECK(f_sp.value == exp(f_s, Scalar{mpz_class(r)}).value);
    }
  }
}

TEST_CASE("element range check accepts exactly [2, p-2]")
{
  const auto params = toy23();
  for (unsigned long v = 0; v <= 24; ++v) {
    const bool expected = v >= 2 && v <= 21;
    CHECK(validate_element_range(elt(v, params)) == expected);
  }
}

TEST_CASE("exp matches a naive square-and-multiply oracle over the whole toy group")
{
  const auto params = toy23();
  for (unsigned long base = 0; base <= 22; ++base) {
    for (unsigned long e = 1; e <= 10; ++e) {
      CHECK(exp(elt(base, params), Scalar{mpz_class(e)}).value ==
            refcrypto::modpow(base, e, 23));
    }
  }
}

TEST_CASE("exp worked examples")
{
  const auto params = toy23();
  CHECK(exp(elt(2, params), Scalar{3}).value == 8);
  CHECK(exp(elt(2, params), Scalar{11}).value == 1);
  CHECK(exp(elt(2, params), Scalar{12}).value == 2);
}

TEST_CASE("derived generators land in the order-q subgroup")
{
  const auto params = toy23();
  for (unsigned long s = 2; s <= 21; ++s) {
    const GroupElement g = derive_generator_original({static_cast<std::uint8_t>(s)}, params);
    CHECK(exp(g, Scalar{11}).value == 1);
  }
}

TEST_CASE("exponentiation commutes")
{
  const auto params = toy23();
  const GroupElement g = elt(2, params);
  for (unsigned long x = 1; x <= 10; ++x) {
    for (unsigned long y = 1; y <= 10; ++y) {
      CHECK(exp(exp(g, Scalar{mpz_class(x)}), Scalar{mpz_class(y)}) ==
            exp(exp(g, Scalar{mpz_class(y)}), Scalar{mpz_class(x)}));
    }
  }
}

TEST_CASE("scalar sampling is deterministic per seed and stays in range")
{
  const auto params = toy23();
  Mt19937Source a(42);
  Mt19937Source b(42);
  const Scalar sa = sample_scalar(a, *params);
  const Scalar sb = sample_scalar(b, *params);
  CHECK(sa == sb);

  Mt19937Source c(7);
  for (int i = 0; i < 1000; ++i) {
    const Scalar s = sample_scalar(c, *params);
    CHECK(s.value >= 1);
    CHECK(s.value <= 10);
  }
}

TEST_CASE("scalar sampling is uniform within 5 sigma per residue")
{
  const auto params = toy23();
  Mt19937Source rng(1234);
  constexpr int kDraws = 100000;
  std::array<int, 11> counts{};
  for (int i = 0; i < kDraws; ++i) {
    counts[sample_scalar(rng, *params).value.get_ui()]++;
  }
  const double expected = kDraws / 10.0;
  const double sigma = std::sqrt(kDraws * 0.1 * 0.9);
  for (int v = 1; v <= 10; ++v) {
    CHECK(std::abs(counts[v] - expected) <= 5.0 * sigma);
  }
}

TEST_CASE("scripted sources force scalars and reject out-of-range bytes")
{
  const auto params = toy23();

  ScriptedSource direct{ByteString{3}};
  CHECK(sample_scalar(direct, *params).value == 3);

  // 0 is rejected, the next byte is taken.
  ScriptedSource with_rejection{ByteString{0, 5}};
  CHECK(sample_scalar(with_rejection, *params).value == 5);

  // 0x0b masks to 11 > q-1 and the script has nothing further.
  ScriptedSource exhausted{ByteString{0x0b}};
  CHECK_THROWS_AS(sample_scalar(exhausted, *params), SpekeError);
}

TEST_CASE("big-endian integer conversions round-trip")
{
  CHECK(mpz_from_bytes(ByteString{0x01, 0x00}) == 256);
  CHECK(bytes_from_mpz(256, 2) == ByteString{0x01, 0x00});
  CHECK(bytes_from_mpz(0, 3) == ByteString{0, 0, 0});
  CHECK_THROWS_AS(bytes_from_mpz(256, 1), SpekeError);

  const auto params = group_preset("modp2048");
  const ByteString enc = bytes_from_mpz(params->p - 1, params->element_width);
  CHECK(enc.size() == 256);
  CHECK(mpz_from_bytes(enc) == params->p - 1);
}
