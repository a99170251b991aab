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

#include "speke/protocol.hpp"

#include <algorithm>
#include <utility>

namespace speke {

std::string_view to_string(Variant v)
{
  switch (v) {
    case Variant::Jablon96: return "jablon96";
    case Variant::IeeeP1363_2: return "ieee-p1363-2";
    case Variant::Iso11770_4_2006: return "iso-11770-4-2006";
    case Variant::Patch2014: return "patch-2014";
    case Variant::PSpeke2017: return "p-speke-2017";
  }
  return "?";
}

std::string_view to_string(ConfirmationMethod m)
{
  switch (m) {
    case ConfirmationMethod::None: return "none";
    case ConfirmationMethod::JablonDoubleHash: return "jablon-double-hash";
    case ConfirmationMethod::TaggedHash34: return "tagged-hash-3-4";
    case ConfirmationMethod::SymmetricHash: return "symmetric-hash";
    case ConfirmationMethod::SymmetricMac: return "symmetric-mac";
  }
  return "?";
}

std::string_view to_string(Role r)
{
  return r == Role::Initiator ? "initiator" : "responder";
}

std::string_view to_string(Phase p)
{
  switch (p) {
    case Phase::Created: return "CREATED";
    case Phase::Sent: return "SENT";
    case Phase::Keyed: return "KEYED";
    case Phase::ConfirmSent: return "CONFIRM_SENT";
    case Phase::Accepted: return "ACCEPTED";
    case Phase::Aborted: return "ABORTED";
  }
  return "?";
}

std::optional<Variant> variant_from_string(std::string_view s)
{
  for (Variant v : {Variant::Jablon96, Variant::IeeeP1363_2, Variant::Iso11770_4_2006,
                    Variant::Patch2014, Variant::PSpeke2017}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

std::optional<ConfirmationMethod> confirmation_from_string(std::string_view s)
{
  for (ConfirmationMethod m :
       {ConfirmationMethod::None, ConfirmationMethod::JablonDoubleHash,
        ConfirmationMethod::TaggedHash34, ConfirmationMethod::SymmetricHash,
        ConfirmationMethod::SymmetricMac}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

ConfirmationMethod preset_confirmation(Variant v)
{
  switch (v) {
    case Variant::Jablon96: return ConfirmationMethod::JablonDoubleHash;
    case Variant::IeeeP1363_2: return ConfirmationMethod::TaggedHash34;
    case Variant::Iso11770_4_2006: return ConfirmationMethod::TaggedHash34;
    case Variant::Patch2014: return ConfirmationMethod::SymmetricMac;
    case Variant::PSpeke2017: return ConfirmationMethod::SymmetricHash;
  }
  return ConfirmationMethod::None;
}

bool uses_hashed_generator(Variant v)
{
  return v != Variant::Jablon96;
}

bool is_symmetric_confirmation(ConfirmationMethod m)
{
  return m == ConfirmationMethod::SymmetricHash || m == ConfirmationMethod::SymmetricMac;
}

int round_count(ConfirmationMethod m)
{
  switch (m) {
    case ConfirmationMethod::None: return 1;
    case ConfirmationMethod::JablonDoubleHash: return 3;
    case ConfirmationMethod::TaggedHash34: return 3;
    case ConfirmationMethod::SymmetricHash: return 2;
    case ConfirmationMethod::SymmetricMac: return 2;
  }
  return 0;
}

std::string Identity::rendered() const
{
  if (!session_extension) {
    return base_name;
  }
  return base_name + " (" + std::to_string(*session_extension) + ")";
}

bool is_exchange(const Message& m)
{
  return std::holds_alternative<ExchangeMessage>(m);
}

bool is_confirm(const Message& m)
{
  return std::holds_alternative<ConfirmMessage>(m);
}

namespace {

ByteString lex_min(const ByteString& a, const ByteString& b)
{
  return a < b ? a : b;
}

ByteString lex_max(const ByteString& a, const ByteString& b)
{
  return a < b ? b : a;
}

} // namespace

SessionKey derive_session_key(Variant variant, const Identity& self_id, const Identity& peer_id,
                              const GroupElement& own_element, const GroupElement& peer_element,
                              const GroupElement& shared, Role /*role*/)
{
  const ByteString shared_enc = encode_element(shared);

  switch (variant) {
    case Variant::Jablon96:
    case Variant::IeeeP1363_2:
    case Variant::Iso11770_4_2006:
      return SessionKey{kdf(shared_enc, "SK"), std::nullopt};

    case Variant::Patch2014: {
      // M = H(min(A,B) || max(A,B)), N = H(min(X,Y) || max(X,Y)),
      // k = KDF(M || N || SV). min/max are lexicographic on the encodings.
      const ByteString ia = encode_identity(self_id.rendered());
      const ByteString ib = encode_identity(peer_id.rendered());
      ByteString id_pre = lex_min(ia, ib);
      append(id_pre, lex_max(ia, ib));
      const Digest m = hash(id_pre);

      const ByteString ea = encode_element(own_element);
      const ByteString eb = encode_element(peer_element);
      ByteString elt_pre = lex_min(ea, eb);
      append(elt_pre, lex_max(ea, eb));
      const Digest n = hash(elt_pre);

      ByteString key_pre = to_bytes(m);
      append(key_pre, to_bytes(n));
      append(key_pre, shared_enc);
      return SessionKey{kdf(key_pre, "SK"), std::nullopt};
    }

    case Variant::PSpeke2017: {
      // s_own = H(self || own), s_peer = H(peer || peer_elt),
      // sID = max || min on the two digests, k = KDF(sID || SV).
      ByteString own_pre = encode_identity(self_id.rendered());
      append(own_pre, encode_element(own_element));
      const Digest s_own = hash(own_pre);

      ByteString peer_pre = encode_identity(peer_id.rendered());
      append(peer_pre, encode_element(peer_element));
      const Digest s_peer = hash(peer_pre);

      const Digest& hi = s_own < s_peer ? s_peer : s_own;
      const Digest& lo = s_own < s_peer ? s_own : s_peer;
      ByteString sid = to_bytes(hi);
      append(sid, to_bytes(lo));

      ByteString key_pre = sid;
      append(key_pre, shared_enc);
      return SessionKey{kdf(key_pre, "SK"), std::move(sid)};
    }
  }
  throw SpekeError(ErrorCode::WrongPhase, "unreachable variant");
}

Digest confirmation_tag(Variant /*variant*/, ConfirmationMethod method, Role role,
                        const Identity& self_id, const Identity& peer_id,
                        const GroupElement& own_element, const GroupElement& peer_element,
                        const GroupElement& shared, const GroupElement& generator,
                        const SessionKey& key)
{
  switch (method) {
    case ConfirmationMethod::None:
      throw SpekeError(ErrorCode::ConfirmationDisabled, "confirmation method is none");

    case ConfirmationMethod::JablonDoubleHash: {
      // Initiator challenges with H(H(k)); the responder answers H(k).
      const Digest hk = hash(to_bytes(key.bytes));
      return role == Role::Initiator ? hash(to_bytes(hk)) : hk;
    }

    case ConfirmationMethod::TaggedHash34: {
      // H(3 || X_i || Y_r || SV || g) from the initiator, H(4 || ...) back.
      // Both directions put the initiator's exchange element first.
      const GroupElement& x_i = role == Role::Initiator ? own_element : peer_element;
      const GroupElement& y_r = role == Role::Initiator ? peer_element : own_element;
      ByteString pre;
      append(pre, static_cast<std::uint8_t>(role == Role::Initiator ? 0x03 : 0x04));
      append(pre, encode_element(x_i));
      append(pre, encode_element(y_r));
      append(pre, encode_element(shared));
      append(pre, encode_element(generator));
      return hash(pre);
    }

    case ConfirmationMethod::SymmetricHash: {
      ByteString pre = encode_identity(self_id.rendered());
      append(pre, encode_identity(peer_id.rendered()));
      append(pre, encode_element(own_element));
      append(pre, encode_element(peer_element));
      append(pre, encode_element(shared));
      append(pre, encode_element(generator));
      return hash(pre);
    }

    case ConfirmationMethod::SymmetricMac: {
      // k_c is derived under a tag distinct from the session key's, so the
      // session key itself never appears in confirmation traffic.
      const Digest kc = kdf(encode_element(shared), "KC");
      ByteString pre = encode_identity("KC_1_U");
      append(pre, encode_identity(self_id.rendered()));
      append(pre, encode_identity(peer_id.rendered()));
      append(pre, encode_element(own_element));
      append(pre, encode_element(peer_element));
      return mac(kc, pre);
    }
  }
  throw SpekeError(ErrorCode::WrongPhase, "unreachable confirmation method");
}

Session::Session(SessionConfig cfg, GroupElement generator, Scalar x)
  : cfg_(std::move(cfg)),
    generator_(std::move(generator)),
    x_(std::move(x)),
    own_element_(exp(generator_, x_)),
    exchange_message_(ExchangeMessage{cfg_.self_id.rendered(), own_element_})
{
  phase_ = Phase::Sent;
  record_sent(encode_element(own_element_));
}

Session Session::start(SessionConfig cfg, RandomSource& rng)
{
  const std::string self = cfg.self_id.rendered();
  const std::string peer = cfg.peer_id.rendered();
  if (self.empty() || peer.empty()) {
    throw SpekeError(ErrorCode::EmptyIdentity, "identities must be non-empty");
  }
  if (self == peer) {
    throw SpekeError(ErrorCode::IdentitiesEqual, "self and peer render to '" + self + "'");
  }
  if (cfg.password.empty()) {
    throw SpekeError(ErrorCode::EmptyPassword, "password must be non-empty");
  }

  GroupElement g = uses_hashed_generator(cfg.variant)
                       ? derive_generator_hashed(cfg.password, cfg.params)
                       : derive_generator_original(cfg.password, cfg.params);
  Scalar x = sample_scalar(rng, *cfg.params);
  return Session(std::move(cfg), std::move(g), std::move(x));
}

void Session::abort(ErrorCode reason)
{
  phase_ = Phase::Aborted;
  abort_reason_ = reason;
}

void Session::record_sent(const ByteString& payload)
{
  if (cfg_.registry) {
    cfg_.registry->record(payload);
  }
}

bool Session::is_duplicate(const ByteString& payload) const
{
  return cfg_.detect_duplicates && cfg_.registry && cfg_.registry->contains(payload);
}

void Session::process_exchange(const Message& msg)
{
  if (phase_ != Phase::Sent) {
    throw SpekeError(ErrorCode::WrongPhase,
                     "process_exchange in phase " + std::string(to_string(phase_)));
  }
  const auto* ex = std::get_if<ExchangeMessage>(&msg);
  if (ex == nullptr) {
    throw SpekeError(ErrorCode::WrongPhase, "expected an exchange message");
  }

  if (ex->sender != cfg_.peer_id.rendered()) {
    abort(ErrorCode::PeerIdentityMismatch);
    return;
  }
  if (!validate_element_range(ex->element)) {
    abort(ErrorCode::RangeCheckFailed);
    return;
  }
  if (is_duplicate(encode_element(ex->element))) {
    abort(ErrorCode::DuplicateMessage);
    return;
  }

  peer_element_ = ex->element;
  shared_value_ = exp(*peer_element_, x_);
  key_ = derive_session_key(cfg_.variant, cfg_.self_id, cfg_.peer_id, own_element_,
                            *peer_element_, *shared_value_, cfg_.role);
  phase_ = Phase::Keyed;
}

bool Session::confirmation_due() const noexcept
{
  if (cfg_.confirm == ConfirmationMethod::None) return false;
  if (phase_ != Phase::Keyed || own_confirm_sent_) return false;
  if (is_symmetric_confirmation(cfg_.confirm)) return true;
  // Ordered methods: the initiator opens, the responder replies only after
  // verifying the initiator's tag.
  return cfg_.role == Role::Initiator ? true : peer_confirmed_;
}

Message Session::make_confirmation()
{
  if (cfg_.confirm == ConfirmationMethod::None) {
    throw SpekeError(ErrorCode::ConfirmationDisabled, "confirmation method is none");
  }
  if (!confirmation_due()) {
    throw SpekeError(ErrorCode::WrongPhase, "confirmation not due for this party");
  }

  const Digest tag = confirmation_tag(cfg_.variant, cfg_.confirm, cfg_.role, cfg_.self_id,
                                      cfg_.peer_id, own_element_, *peer_element_, *shared_value_,
                                      generator_, *key_);
  own_confirm_sent_ = true;
  phase_ = peer_confirmed_ ? Phase::Accepted : Phase::ConfirmSent;
  record_sent(to_bytes(tag));
  return ConfirmMessage{tag};
}

Digest Session::expected_peer_tag() const
{
  const Role peer_role = cfg_.role == Role::Initiator ? Role::Responder : Role::Initiator;
  return confirmation_tag(cfg_.variant, cfg_.confirm, peer_role, cfg_.peer_id, cfg_.self_id,
                          *peer_element_, own_element_, *shared_value_, generator_, *key_);
}

void Session::verify_confirmation(const Message& msg)
{
  if (cfg_.confirm == ConfirmationMethod::None) {
    throw SpekeError(ErrorCode::ConfirmationDisabled, "confirmation method is none");
  }
  if (phase_ != Phase::Keyed && phase_ != Phase::ConfirmSent) {
    throw SpekeError(ErrorCode::WrongPhase,
                     "verify_confirmation in phase " + std::string(to_string(phase_)));
  }
  const auto* cm = std::get_if<ConfirmMessage>(&msg);
  if (cm == nullptr) {
    throw SpekeError(ErrorCode::WrongPhase, "expected a confirmation message");
  }
  if (peer_confirmed_) {
    throw SpekeError(ErrorCode::WrongPhase, "peer confirmation already verified");
  }
  if (!is_symmetric_confirmation(cfg_.confirm) && cfg_.role == Role::Initiator &&
      !own_confirm_sent_) {
    // Ordered methods have a unique legal schedule: a reply cannot precede
    // the initiator's challenge.
    throw SpekeError(ErrorCode::WrongPhase, "ordered method: reply before challenge");
  }

  if (is_duplicate(to_bytes(cm->tag))) {
    abort(ErrorCode::DuplicateMessage);
    return;
  }
  if (cm->tag != expected_peer_tag()) {
    abort(ErrorCode::ConfirmationMismatch);
    return;
  }
  peer_confirmed_ = true;
  if (own_confirm_sent_) {
    phase_ = Phase::Accepted;
  }
}

const SessionKey& Session::key() const
{
  if (!key_) {
    throw SpekeError(ErrorCode::WrongPhase, "no session key in phase " +
                                                std::string(to_string(phase_)));
  }
  return *key_;
}

} // namespace speke
