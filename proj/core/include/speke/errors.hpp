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

#ifndef SPEKE_ERRORS_HPP
#define SPEKE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace speke {

// Two families share this enum: contract violations raised as SpekeError
// (WrongPhase, ConfirmationDisabled, ...) and protocol-level abort reasons
// recorded on a session (RangeCheckFailed, ConfirmationMismatch, ...).
enum class ErrorCode {
  NotPrime,
  NotSafePrime,
  GroupTooSmall,
  DegenerateGenerator,
  EmptyIdentity,
  IdentityTooLong,
  IdentitiesEqual,
  EmptyPassword,
  RangeCheckFailed,
  PeerIdentityMismatch,
  WrongPhase,
  ConfirmationMismatch,
  ConfirmationDisabled,
  DuplicateMessage,
  InvalidExponent,
  Timeout,
  FrameError,
  UnknownPreset,
  RngExhausted,
};

std::string_view to_string(ErrorCode code);

class SpekeError : public std::runtime_error {
public:
  SpekeError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace speke

#endif // SPEKE_ERRORS_HPP
