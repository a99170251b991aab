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

#ifndef SPEKE_TOOLS_MATRIX_GOLDEN_HPP
#define SPEKE_TOOLS_MATRIX_GOLDEN_HPP

namespace speke_cli {

// Embedded copy of data/security_matrix.golden, generated at configure time.
extern const char* const kMatrixGoldenText;

} // namespace speke_cli

#endif // SPEKE_TOOLS_MATRIX_GOLDEN_HPP
