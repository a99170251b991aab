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

#ifndef SPEKE_ATTACKS_HPP
#define SPEKE_ATTACKS_HPP

#include "speke/simnet.hpp"

// Scripted adversary strategies for the four classic attacks on SPEKE-style
// exchanges, plus the variant-by-variant outcome matrix. Attack failure is a
// result, not an error: every run yields a structured AttackOutcome.

namespace speke {

struct AttackConfig {
  Variant variant = Variant::Jablon96;
  ConfirmationMethod confirm = ConfirmationMethod::None;
  GroupParamsPtr params;
  std::uint64_t seed = 0;
  bool dup_detect = false;
  ByteString password; // victims' shared password; defaults to a fixed one
};

struct AttackOutcome {
  std::string attack_name;
  Variant variant = Variant::Jablon96;
  ConfirmationMethod confirm = ConfirmationMethod::None;
  bool success = false;
  std::vector<SessionReport> sessions;
  bool adversary_learned_key = false;
  /// Malleability only: the modification was noticed (both sessions aborted,
  /// at least one with a confirmation mismatch).
  std::optional<bool> detected;
  /// Impersonation only: the two victim sessions hold identical keys while
  /// both believe they talk to the absent party.
  std::optional<bool> uks_condition;
  std::string notes;
  EventTrace trace;

  std::string report_text() const;
};

/// Parallel-session impersonation. The adversary opens a second session to
/// the victim under the absent party's name, reflects exponent-z powers of
/// the victim's own elements and relays the confirmation tags between the
/// two sessions. Success: session 1 accepted (method None: both sessions
/// keyed with equal keys) while nobody holding the password as the claimed
/// peer ever ran.
///
/// When z is not given it is chosen per the confirmation method: 1 for
/// TaggedHash34 (tags embed the exchange elements, so only a verbatim relay
/// can verify) and a sampled exponent in [2, q-2] otherwise.
AttackOutcome impersonation_attack(const AttackConfig& cfg, std::optional<Scalar> z = {});

/// Man in the middle raising both exchange elements to the power z
/// (z in [2, q-2]). Success: both sides complete with equal keys despite the
/// modification.
AttackOutcome malleability_attack(const AttackConfig& cfg, std::optional<Scalar> z = {});

/// Cross-wires two concurrent sessions between the same two parties.
/// Patch2014 and PSpeke2017 runs give each session unique identity
/// extensions, the deployment style those variants prescribe. Success: both
/// cross pairings complete with matching keys.
AttackOutcome session_swap_attack(const AttackConfig& cfg);

/// Zhang's exponential-equivalence classifier. The victim holds either s or
/// s' = s^r mod p; the attacker plays one session with generator guess f(s),
/// receives the victim's first confirmation tag and tests both password
/// candidates against it offline. Success: the classification matches the
/// victim's actual choice. Throws InvalidExponent when gcd(r, q) != 1.
AttackOutcome exp_equivalence_attack(const AttackConfig& cfg, const ByteString& s,
                                     const mpz_class& r, bool victim_holds_s_pow_r);

/// Same, with caller-controlled randomness (victim scalar drawn first, then
/// the attacker's).
AttackOutcome exp_equivalence_attack(const AttackConfig& cfg, const ByteString& s,
                                     const mpz_class& r, bool victim_holds_s_pow_r,
                                     RandomSource& rng);

/// The per-variant outcome a successful run is checked against: which
/// attacks apply to which variant under which confirmation method.
bool expected_attack_success(std::string_view attack_name, Variant variant,
                             ConfirmationMethod confirm);

struct MatrixReport {
  std::string text; // aligned table
  std::string kv;   // structured key-value records, one cell per line
};

/// Runs every attack against every variant, once under the variant's preset
/// confirmation method and once in implicit mode (method None), and renders
/// the verdict matrix. Formal-model-only columns are reported as n/a.
MatrixReport security_matrix(const GroupParamsPtr& params, std::uint64_t seed);

/// First cell where two matrix renderings disagree, as a human-readable
/// description. Empty when they match byte for byte.
std::string matrix_diff(const std::string& got, const std::string& want);

} // namespace speke

#endif // SPEKE_ATTACKS_HPP
