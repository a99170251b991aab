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

#ifndef SPEKE_PROTOCOL_HPP
#define SPEKE_PROTOCOL_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "speke/codec.hpp"
#include "speke/group.hpp"

// The variant-parameterized SPEKE session state machine: one exchange round,
// variant-specific session-key derivation, and one of five key-confirmation
// methods.

namespace speke {

/// Which protocol version is in force. The variant picks the generator
/// derivation and the session-key formula.
enum class Variant {
  Jablon96,        // g = s^2, k = KDF(g^xy)
  IeeeP1363_2,     // g = H(s)^2, k = KDF(g^xy)
  Iso11770_4_2006, // g = H(s)^2, k = KDF(g^xy)
  Patch2014,       // g = H(s)^2, k binds sorted identities + sorted elements
  PSpeke2017,      // g = H(s)^2, k binds sID = max(s_A,s_B) || min(s_A,s_B)
};

enum class ConfirmationMethod {
  None,
  JablonDoubleHash, // initiator sends H(H(k)), responder answers H(k)
  TaggedHash34,     // H(3 || X || Y || SV || g) one way, H(4 || ...) back
  SymmetricHash,    // H(self || peer || own || peer_elt || SV || g), one round
  SymmetricMac,     // MAC(k_c, "KC_1_U" || self || peer || own || peer_elt)
};

enum class Role { Initiator, Responder };

enum class Phase { Created, Sent, Keyed, ConfirmSent, Accepted, Aborted };

std::string_view to_string(Variant v);
std::string_view to_string(ConfirmationMethod m);
std::string_view to_string(Role r);
std::string_view to_string(Phase p);
std::optional<Variant> variant_from_string(std::string_view s);
std::optional<ConfirmationMethod> confirmation_from_string(std::string_view s);

/// Historically accurate pairing of variant and confirmation method. The
/// harness may override it to probe cross combinations.
ConfirmationMethod preset_confirmation(Variant v);

bool uses_hashed_generator(Variant v);

/// True for methods where both confirmation messages can be sent in the same
/// round with no dependency between them.
bool is_symmetric_confirmation(ConfirmationMethod m);

/// Total channel rounds of a full run, including the one exchange round.
int round_count(ConfirmationMethod m);

/// Party name plus an optional per-session extension, rendered as
/// "name" or "name (n)". The rendered form is what travels on the wire and
/// what every hash sees.
struct Identity {
  std::string base_name;
  std::optional<std::uint32_t> session_extension;

  std::string rendered() const;

  friend bool operator==(const Identity& a, const Identity& b)
  {
    return a.rendered() == b.rendered();
  }
};

struct ExchangeMessage {
  std::string sender; // rendered identity
  GroupElement element;
};

struct ConfirmMessage {
  Digest tag;
};

using Message = std::variant<ExchangeMessage, ConfirmMessage>;

bool is_exchange(const Message& m);
bool is_confirm(const Message& m);

/// Derived session key. For PSpeke2017 the sid field carries the 64-octet
/// session identifier max(s_A, s_B) || min(s_A, s_B).
struct SessionKey {
  Digest bytes{};
  std::optional<ByteString> sid;

  friend bool operator==(const SessionKey& a, const SessionKey& b)
  {
    return a.bytes == b.bytes;
  }
};

/// The variant-specific session key formula. `shared` must be
/// peer_element^x as computed by the caller. The result does not depend on
/// `role` for any variant; the parameter documents the caller's view.
SessionKey derive_session_key(Variant variant, const Identity& self_id, const Identity& peer_id,
                              const GroupElement& own_element, const GroupElement& peer_element,
                              const GroupElement& shared, Role role);

/// The confirmation tag a party with this view of the session would send.
/// Computing the peer's expected tag is the same call with the self/peer and
/// own/peer-element arguments swapped and the role flipped.
Digest confirmation_tag(Variant variant, ConfirmationMethod method, Role role,
                        const Identity& self_id, const Identity& peer_id,
                        const GroupElement& own_element, const GroupElement& peer_element,
                        const GroupElement& shared, const GroupElement& generator,
                        const SessionKey& key);

/// Payload bytes one party has sent, shared across that party's concurrent
/// sessions. Used by the optional duplicate-message check.
class SentPayloadRegistry {
public:
  void record(const ByteString& payload) { seen_.insert(payload); }
  bool contains(const ByteString& payload) const { return seen_.count(payload) != 0; }

private:
  std::set<ByteString> seen_;
};

struct SessionConfig {
  Role role = Role::Initiator;
  Identity self_id;
  Identity peer_id;
  ByteString password;
  Variant variant = Variant::PSpeke2017;
  ConfirmationMethod confirm = ConfirmationMethod::SymmetricHash;
  GroupParamsPtr params;
  /// Abort on payloads this party has already sent in a concurrent session.
  bool detect_duplicates = false;
  std::shared_ptr<SentPayloadRegistry> registry; // per party; may be shared
};

/// One party's view of one protocol run.
///
/// Contract-violating calls (wrong phase, confirmation disabled) throw
/// SpekeError. Protocol-level failures (range check, identity mismatch,
/// confirmation mismatch, duplicates) do not throw: they move the session to
/// Phase::Aborted and record the reason.
class Session {
public:
  /// Derives the generator, samples the ephemeral scalar and produces the
  /// outgoing exchange message. The new session is in Phase::Sent.
  static Session start(SessionConfig cfg, RandomSource& rng);

  const Message& exchange_message() const { return exchange_message_; }

  void process_exchange(const Message& msg);

  /// True when make_confirmation() is the next legal step for this party.
  bool confirmation_due() const noexcept;

  Message make_confirmation();

  void verify_confirmation(const Message& msg);

  /// Unconditional abort. Used by the channel layer for timeouts and for
  /// contract violations triggered by adversarial scheduling.
  void force_abort(ErrorCode reason) { abort(reason); }

  Phase phase() const noexcept { return phase_; }
  std::optional<ErrorCode> abort_reason() const noexcept { return abort_reason_; }
  bool has_key() const noexcept { return key_.has_value(); }
  const SessionKey& key() const;

  Role role() const noexcept { return cfg_.role; }
  const Identity& self_id() const noexcept { return cfg_.self_id; }
  const Identity& peer_id() const noexcept { return cfg_.peer_id; }
  Variant variant() const noexcept { return cfg_.variant; }
  ConfirmationMethod confirmation_method() const noexcept { return cfg_.confirm; }
  const GroupElement& own_element() const noexcept { return own_element_; }
  const GroupElement& generator() const noexcept { return generator_; }

private:
  Session(SessionConfig cfg, GroupElement generator, Scalar x);

  void abort(ErrorCode reason);
  Digest expected_peer_tag() const;
  void record_sent(const ByteString& payload);
  bool is_duplicate(const ByteString& payload) const;

  SessionConfig cfg_;
  GroupElement generator_;
  Scalar x_;
  GroupElement own_element_;
  std::optional<GroupElement> peer_element_;
  std::optional<GroupElement> shared_value_;
  std::optional<SessionKey> key_;
  Message exchange_message_;
  Phase phase_ = Phase::Created;
  std::optional<ErrorCode> abort_reason_;
  bool own_confirm_sent_ = false;
  bool peer_confirmed_ = false;
};

} // namespace speke

#endif // SPEKE_PROTOCOL_HPP
