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

#ifndef SPEKE_PRESETS_HPP
#define SPEKE_PRESETS_HPP

#include <string_view>
#include <vector>

#include "speke/group.hpp"

namespace speke {

// Built-in groups addressable by string id:
//   "toy23"    - p=23, q=11. Small enough for exhaustive oracles.
//   "modp2048" - the RFC 3526 2048-bit MODP safe prime, for realistic runs.
GroupParamsPtr group_preset(std::string_view id);

std::vector<std::string_view> group_preset_ids();

} // namespace speke

#endif // SPEKE_PRESETS_HPP
