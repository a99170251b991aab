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

#include "speke/presets.hpp"

#include <string>

namespace speke {

namespace {

// RFC 3526, group 14. A safe prime: (p-1)/2 is also prime.
constexpr const char* kModp2048Hex =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

GroupParamsPtr make_toy23()
{
  return validate_group(23, 11);
}

GroupParamsPtr make_modp2048()
{
  mpz_class p(kModp2048Hex, 16);
  mpz_class q = (p - 1) / 2;
  return validate_group(p, q);
}

} // namespace

GroupParamsPtr group_preset(std::string_view id)
{
  // Validated once and cached; presets are immutable and shared.
  if (id == "toy23") {
    static const GroupParamsPtr toy = make_toy23();
    return toy;
  }
  if (id == "modp2048") {
    static const GroupParamsPtr modp = make_modp2048();
    return modp;
  }
  throw SpekeError(ErrorCode::UnknownPreset, "no group preset named '" + std::string(id) + "'");
}

std::vector<std::string_view> group_preset_ids()
{
  return {"toy23", "modp2048"};
}

} // namespace speke
