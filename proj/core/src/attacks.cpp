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

#include "speke/attacks.hpp"

#include <array>
#include <sstream>

namespace speke {

namespace {

const ByteString& default_password()
{
  static const ByteString pw = to_bytes("hunter2 correct horse");
  return pw;
}

ByteString effective_password(const AttackConfig& cfg)
{
  return cfg.password.empty() ? default_password() : cfg.password;
}

bool completed(const SessionReport& s, ConfirmationMethod confirm)
{
  if (confirm == ConfirmationMethod::None) {
    return s.phase == Phase::Keyed;
  }
  return s.phase == Phase::Accepted;
}

bool keys_match(const SessionReport& a, const SessionReport& b)
{
  return a.key && b.key && a.key->bytes == b.key->bytes;
}

/// Samples z in [lo, hi] such that base^z stays inside {2, ..., p-2},
/// re-sampling on violation. For bases inside the order-q subgroup the guard
/// never fires (z < q keeps the power off 1, and p-1 is outside the
/// subgroup), but intercepted bytes are not trusted to be subgroup members.
Scalar sample_exponent_in_range(RandomSource& rng, const GroupParams& params,
                                const GroupElement& base, const mpz_class& lo,
                                const mpz_class& hi, int* resamples)
{
  constexpr int kMaxTries = 256;
  for (int tries = 0; tries < kMaxTries; ++tries) {
    Scalar z = sample_scalar(rng, params);
    if (z.value < lo || z.value > hi) {
      continue;
    }
    if (validate_element_range(exp(base, z))) {
      if (resamples != nullptr) *resamples = tries;
      return z;
    }
    if (resamples != nullptr) ++*resamples;
  }
  throw SpekeError(ErrorCode::InvalidExponent,
                   "no exponent keeps the intercepted element in range");
}

std::string mpz_str(const mpz_class& v)
{
  return v.get_str();
}

// Relays between the victim's two parallel sessions, raising exchange
// elements to the power z and claiming the absent party's identity. When no
// z is fixed up front, it is chosen against the first intercepted element so
// that the injected power stays in range.
class ImpersonationRelay final : public Adversary {
public:
  ImpersonationRelay(GroupParamsPtr params, std::string claimed_identity,
                     std::optional<Scalar> z, std::uint64_t rng_seed, std::string session1,
                     std::string session2)
    : params_(std::move(params)),
      claimed_identity_(std::move(claimed_identity)),
      z_(std::move(z)),
      rng_(rng_seed),
      session1_(std::move(session1)),
      session2_(std::move(session2))
  {}

  std::vector<InterceptAction> on_message(int /*round*/, const std::string& from,
                                          const std::string& /*to*/,
                                          const Message& msg) override
  {
    const std::string& other = from == session1_ ? session2_ : session1_;
    if (const auto* ex = std::get_if<ExchangeMessage>(&msg)) {
      if (!z_) {
        z_ = sample_exponent_in_range(rng_, *params_, ex->element, 2, params_->q - 2,
                                      &resamples_);
      }
      GroupElement raised = exp(ex->element, *z_);
      return {Drop{}, Inject{other, ExchangeMessage{claimed_identity_, std::move(raised)}}};
    }
    return {Drop{}, Inject{other, msg}};
  }

  const std::optional<Scalar>& z() const { return z_; }
  int resamples() const { return resamples_; }

private:
  GroupParamsPtr params_;
  std::string claimed_identity_;
  std::optional<Scalar> z_;
  Mt19937Source rng_;
  int resamples_ = 0;
  std::string session1_;
  std::string session2_;
};

class MalleabilityMitm final : public Adversary {
public:
  explicit MalleabilityMitm(Scalar z) : z_(std::move(z)) {}

  std::vector<InterceptAction> on_message(int /*round*/, const std::string& /*from*/,
                                          const std::string& /*to*/,
                                          const Message& msg) override
  {
    if (const auto* ex = std::get_if<ExchangeMessage>(&msg)) {
      return {Modify{ExchangeMessage{ex->sender, exp(ex->element, z_)}}};
    }
    return {Forward{}};
  }

private:
  Scalar z_;
};

// Delivers every message of session pair 1 into session pair 2 and back.
class SessionSwapMitm final : public Adversary {
public:
  explicit SessionSwapMitm(std::map<std::string, std::string> rewire)
    : rewire_(std::move(rewire))
  {}

  std::vector<InterceptAction> on_message(int /*round*/, const std::string& from,
                                          const std::string& /*to*/,
                                          const Message& msg) override
  {
    return {Drop{}, Inject{rewire_.at(from), msg}};
  }

private:
  std::map<std::string, std::string> rewire_;
};

} // namespace

std::string AttackOutcome::report_text() const
{
  std::ostringstream out;
  out << "attack=" << attack_name << " variant=" << to_string(variant)
      << " confirm=" << to_string(confirm) << '\n';
  out << "success=" << (success ? "true" : "false") << '\n';
  if (detected) {
    out << "detected=" << (*detected ? "true" : "false") << '\n';
  }
  if (uks_condition) {
    out << "uks_condition=" << (*uks_condition ? "true" : "false") << '\n';
  }
  out << "adversary_learned_key=" << (adversary_learned_key ? "true" : "false") << '\n';
  for (const SessionReport& s : sessions) {
    out << "session label=" << s.label << " role=" << to_string(s.role)
        << " peer=" << s.peer_belief << " phase=" << to_string(s.phase);
    if (s.abort_reason) {
      out << " abort=" << to_string(*s.abort_reason);
    }
    if (s.key) {
      out << " key=" << to_hex(s.key->bytes);
    }
    out << '\n';
  }
  if (!notes.empty()) {
    out << "notes: " << notes << '\n';
  }
  return out.str();
}

AttackOutcome impersonation_attack(const AttackConfig& cfg, std::optional<Scalar> z)
{
  const Identity alice{"A", std::nullopt};
  const Identity bob{"B", std::nullopt};
  const ByteString password = effective_password(cfg);

  std::optional<Scalar> fixed_z = z;
  std::string z_policy = "sampled";
  if (z) {
    if (z->value < 1 || z->value > cfg.params->q - 1) {
      throw SpekeError(ErrorCode::InvalidExponent, "z must lie in [1, q-1]");
    }
    z_policy = "explicit";
  } else if (cfg.confirm == ConfirmationMethod::TaggedHash34) {
    // Element-binding tags verify across the two sessions only when the
    // relayed elements are unchanged.
    fixed_z = Scalar{1};
    z_policy = "forced-1-for-tagged-hash";
  }

  // In the toy group the victim's two sessions occasionally draw the same
  // ephemeral, turning session 2 into a literal replica of session 1. That
  // has no analogue at real group sizes, so such runs are redone under a
  // shifted seed.
  constexpr int kMaxTwinRetries = 8;
  int twin_retries = 0;
  RunResult run;
  std::optional<Scalar> used_z;
  int z_resamples = 0;
  for (;;) {
    Simulator sim(cfg.seed + std::uint64_t(twin_retries) * 0x0100019fULL);
    // Session 1: the victim initiates towards the absent party. Session 2:
    // the victim answers an incoming session claimed to come from that
    // party.
    sim.add_endpoint({"A#1",
                      SessionConfig{Role::Initiator, alice, bob, password, cfg.variant,
                                    cfg.confirm, cfg.params, cfg.dup_detect, nullptr},
                      "B#absent", false});
    sim.add_endpoint({"A#2",
                      SessionConfig{Role::Responder, alice, bob, password, cfg.variant,
                                    cfg.confirm, cfg.params, cfg.dup_detect, nullptr},
                      "B#absent", true});
    ImpersonationRelay relay(cfg.params, bob.rendered(), fixed_z,
                             cfg.seed ^ 0x9e3779b97f4a7c15ULL, "A#1", "A#2");
    sim.set_adversary(&relay);
    run = sim.run();
    used_z = relay.z();
    z_resamples = relay.resamples();
    const bool twin =
        run.by_label("A#1").own_element == run.by_label("A#2").own_element;
    if (!twin || twin_retries >= kMaxTwinRetries) break;
    ++twin_retries;
  }

  AttackOutcome outcome;
  outcome.attack_name = "impersonation";
  outcome.variant = cfg.variant;
  outcome.confirm = cfg.confirm;
  outcome.sessions = run.sessions;
  outcome.trace = run.trace;

  const SessionReport& s1 = run.by_label("A#1");
  const SessionReport& s2 = run.by_label("A#2");
  const bool keys_equal = keys_match(s1, s2);
  // Observed key sharing: both sessions completed holding the same key while
  // believing they talked to the absent party.
  outcome.uks_condition = keys_equal && completed(s1, cfg.confirm) &&
                          completed(s2, cfg.confirm) &&
                          s1.peer_belief == bob.rendered() &&
                          s2.peer_belief == bob.rendered();
  if (cfg.confirm == ConfirmationMethod::None) {
    outcome.success = s1.phase == Phase::Keyed && s2.phase == Phase::Keyed && keys_equal;
  } else {
    outcome.success = s1.phase == Phase::Accepted;
  }
  outcome.notes = "z=" + (used_z ? mpz_str(used_z->value) : std::string("unset")) +
                  " policy=" + z_policy + " resamples=" + std::to_string(z_resamples) +
                  " twin_retries=" + std::to_string(twin_retries) +
                  "; no party holding the password as B ever ran";
  return outcome;
}

AttackOutcome malleability_attack(const AttackConfig& cfg, std::optional<Scalar> z)
{
  Scalar chosen_z{2};
  if (z) {
    chosen_z = *z;
  } else {
    Mt19937Source adv_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    chosen_z = sample_scalar(adv_rng, *cfg.params);
    while (chosen_z.value < 2 || chosen_z.value > cfg.params->q - 2) {
      chosen_z = sample_scalar(adv_rng, *cfg.params);
    }
  }
  if (chosen_z.value < 2 || chosen_z.value > cfg.params->q - 2) {
    throw SpekeError(ErrorCode::InvalidExponent, "z must lie in [2, q-2]");
  }

  HonestConfig hc;
  hc.variant = cfg.variant;
  hc.confirm = cfg.confirm;
  hc.params = cfg.params;
  hc.password_a = effective_password(cfg);
  hc.seed = cfg.seed;
  hc.dup_detect = cfg.dup_detect;

  MalleabilityMitm mitm(chosen_z);
  RunResult run = run_with_adversary(hc, mitm);

  AttackOutcome outcome;
  outcome.attack_name = "malleability";
  outcome.variant = cfg.variant;
  outcome.confirm = cfg.confirm;
  outcome.sessions = run.sessions;
  outcome.trace = run.trace;

  const SessionReport& a = run.by_label("A");
  const SessionReport& b = run.by_label("B");
  const bool keys_equal = keys_match(a, b);
  outcome.success = completed(a, cfg.confirm) && completed(b, cfg.confirm) && keys_equal;
  const bool mismatch_seen =
      (a.abort_reason && *a.abort_reason == ErrorCode::ConfirmationMismatch) ||
      (b.abort_reason && *b.abort_reason == ErrorCode::ConfirmationMismatch);
  outcome.detected =
      a.phase == Phase::Aborted && b.phase == Phase::Aborted && mismatch_seen;
  outcome.notes = "z=" + mpz_str(chosen_z.value) +
                  (keys_equal ? "; keys equal despite modification" : "; keys diverged");
  return outcome;
}

AttackOutcome session_swap_attack(const AttackConfig& cfg)
{
  // Patch2014 and PSpeke2017 prescribe unique identity extensions for
  // concurrent sessions; the legacy variants ran both sessions under the
  // bare names.
  const bool extensions =
      cfg.variant == Variant::Patch2014 || cfg.variant == Variant::PSpeke2017;
  auto ident = [&](const std::string& base, std::uint32_t n) {
    return extensions ? Identity{base, n} : Identity{base, std::nullopt};
  };
  const ByteString password = effective_password(cfg);

  Simulator sim(cfg.seed);
  for (std::uint32_t s = 1; s <= 2; ++s) {
    const std::string a_label = "A#" + std::to_string(s);
    const std::string b_label = "B#" + std::to_string(s);
    sim.add_endpoint({a_label,
                      SessionConfig{Role::Initiator, ident("A", s), ident("B", s), password,
                                    cfg.variant, cfg.confirm, cfg.params, cfg.dup_detect,
                                    nullptr},
                      b_label, false});
    sim.add_endpoint({b_label,
                      SessionConfig{Role::Responder, ident("B", s), ident("A", s), password,
                                    cfg.variant, cfg.confirm, cfg.params, cfg.dup_detect,
                                    nullptr},
                      a_label, false});
  }

  SessionSwapMitm mitm({{"A#1", "B#2"}, {"B#2", "A#1"}, {"A#2", "B#1"}, {"B#1", "A#2"}});
  sim.set_adversary(&mitm);
  RunResult run = sim.run();

  AttackOutcome outcome;
  outcome.attack_name = "session-swap";
  outcome.variant = cfg.variant;
  outcome.confirm = cfg.confirm;
  outcome.sessions = run.sessions;
  outcome.trace = run.trace;

  const SessionReport& a1 = run.by_label("A#1");
  const SessionReport& b2 = run.by_label("B#2");
  const SessionReport& a2 = run.by_label("A#2");
  const SessionReport& b1 = run.by_label("B#1");
  const bool pairing1 =
      completed(a1, cfg.confirm) && completed(b2, cfg.confirm) && keys_match(a1, b2);
  const bool pairing2 =
      completed(a2, cfg.confirm) && completed(b1, cfg.confirm) && keys_match(a2, b1);
  outcome.success = pairing1 && pairing2;
  outcome.notes = std::string("cross pairings (A#1,B#2) and (A#2,B#1)") +
                  (extensions ? "; session extensions in force" : "");
  return outcome;
}

AttackOutcome exp_equivalence_attack(const AttackConfig& cfg, const ByteString& s,
                                     const mpz_class& r, bool victim_holds_s_pow_r)
{
  Mt19937Source rng(cfg.seed);
  return exp_equivalence_attack(cfg, s, r, victim_holds_s_pow_r, rng);
}

AttackOutcome exp_equivalence_attack(const AttackConfig& cfg, const ByteString& s,
                                     const mpz_class& r, bool victim_holds_s_pow_r,
                                     RandomSource& rng)
{
  if (cfg.confirm == ConfirmationMethod::None) {
    throw SpekeError(ErrorCode::ConfirmationDisabled,
                     "the classifier needs a confirmation tag to test candidates against");
  }
  mpz_class gcd;
  mpz_gcd(gcd.get_mpz_t(), r.get_mpz_t(), cfg.params->q.get_mpz_t());
  if (r < 2 || gcd != 1) {
    throw SpekeError(ErrorCode::InvalidExponent, "need r >= 2 with gcd(r, q) = 1");
  }

  // The equivalence class partner s' = s^r mod p, as password bytes.
  const mpz_class s_int = mpz_from_bytes(s) % cfg.params->p;
  mpz_class s_prime_int;
  mpz_powm(s_prime_int.get_mpz_t(), s_int.get_mpz_t(), r.get_mpz_t(),
           cfg.params->p.get_mpz_t());
  const ByteString s_prime = bytes_from_mpz(s_prime_int, cfg.params->element_width);

  auto derive = [&](const ByteString& pw) {
    return uses_hashed_generator(cfg.variant) ? derive_generator_hashed(pw, cfg.params)
                                              : derive_generator_original(pw, cfg.params);
  };

  const Identity victim_id{"A", std::nullopt};
  const Identity attacker_id{"B", std::nullopt};

  // Victim first: an initiator, so it emits the first confirmation tag.
  Session victim = Session::start(
      SessionConfig{Role::Initiator, victim_id, attacker_id,
                    victim_holds_s_pow_r ? s_prime : s, cfg.variant, cfg.confirm, cfg.params,
                    false, nullptr},
      rng);

  // Attacker guesses the class representative s.
  const GroupElement g_s = derive(s);
  std::optional<GroupElement> g_sp;
  try {
    g_sp = derive(s_prime);
  } catch (const SpekeError&) {
    // s' degenerates under this derivation; the candidate stays untestable.
  }
  const Scalar x = sample_scalar(rng, *cfg.params);
  const GroupElement attacker_element = exp(g_s, x);

  const GroupElement victim_element =
      std::get<ExchangeMessage>(victim.exchange_message()).element;

  EventTrace trace;
  trace.events.push_back({EventKind::Sent, 1, "victim", "attacker",
                          "kind=EXCHANGE sender=A element=" +
                              to_hex(encode_element(victim_element))});
  trace.events.push_back({EventKind::Delivered, 1, "victim", "attacker", "kind=EXCHANGE"});

  victim.process_exchange(ExchangeMessage{attacker_id.rendered(), attacker_element});
  trace.events.push_back({EventKind::Delivered, 2, "attacker", "victim",
                          "kind=EXCHANGE sender=B element=" +
                              to_hex(encode_element(attacker_element))});

  AttackOutcome outcome;
  outcome.attack_name = "exp-equivalence";
  outcome.variant = cfg.variant;
  outcome.confirm = cfg.confirm;

  if (victim.phase() != Phase::Keyed) {
    outcome.success = false;
    outcome.notes = "victim aborted before keying";
    outcome.trace = trace;
    return outcome;
  }

  const Digest observed =
      std::get<ConfirmMessage>(victim.make_confirmation()).tag;
  trace.events.push_back(
      {EventKind::Sent, 3, "victim", "attacker", "kind=CONFIRM tag=" + to_hex(observed)});

  // Candidate "victim holds s": shared value V^x under generator f(s).
  // Candidate "victim holds s'": shared value V^(x * r^-1 mod q) under f(s');
  // the inverse unwinds the exponential relation when f respects it.
  const auto victim_view_tag = [&](const GroupElement& shared,
                                   const GroupElement& generator) {
    const SessionKey k = derive_session_key(cfg.variant, victim_id, attacker_id,
                                            victim_element, attacker_element, shared,
                                            Role::Initiator);
    return confirmation_tag(cfg.variant, cfg.confirm, Role::Initiator, victim_id, attacker_id,
                            victim_element, attacker_element, shared, generator, k);
  };

  const bool match_s = victim_view_tag(exp(victim_element, x), g_s) == observed;

  bool match_sp = false;
  if (g_sp) {
    mpz_class r_inv;
    mpz_invert(r_inv.get_mpz_t(), r.get_mpz_t(), cfg.params->q.get_mpz_t());
    mpz_class e = x.value * r_inv % cfg.params->q;
    if (e != 0) {
      match_sp = victim_view_tag(exp(victim_element, Scalar{e}), *g_sp) == observed;
    }
  }

  std::string classified = "unknown";
  if (match_s && match_sp) {
    classified = "coincidence";
  } else if (match_s) {
    classified = "s";
  } else if (match_sp) {
    classified = "s_pow_r";
  }
  const std::string actual = victim_holds_s_pow_r ? "s_pow_r" : "s";

  outcome.success = classified == actual;
  outcome.adversary_learned_key = match_s != match_sp; // the matched candidate key is real
  outcome.notes = "classified=" + classified + " actual=" + actual +
                  (match_s && match_sp ? "; hash coincidence logged" : "");

  SessionReport victim_report;
  victim_report.label = "victim";
  victim_report.role = Role::Initiator;
  victim_report.peer_belief = attacker_id.rendered();
  victim_report.phase = victim.phase();
  victim_report.key = victim.key();
  outcome.sessions.push_back(std::move(victim_report));
  outcome.trace = std::move(trace);
  return outcome;
}

bool expected_attack_success(std::string_view attack_name, Variant variant,
                             ConfirmationMethod confirm)
{
  // Key derivation blind to identities and transcript: the pre-patch family.
  const bool blind_kdf = variant == Variant::Jablon96 || variant == Variant::IeeeP1363_2 ||
                         variant == Variant::Iso11770_4_2006;

  if (attack_name == "impersonation") {
    // Ordered confirmations relay across parallel sessions; the symmetric
    // methods bind the identity order and break the relay.
    return blind_kdf && !is_symmetric_confirmation(confirm);
  }
  if (attack_name == "malleability") {
    // Any confirmation that hashes the exchange elements notices the
    // modification; double-hash sees only the (equal) keys.
    return blind_kdf && (confirm == ConfirmationMethod::None ||
                         confirm == ConfirmationMethod::JablonDoubleHash);
  }
  if (attack_name == "session-swap") {
    // Nothing in the legacy variants binds a key to its session.
    return blind_kdf;
  }
  if (attack_name == "exp-equivalence") {
    // Hashing the password before squaring breaks the exponential relation.
    return variant == Variant::Jablon96;
  }
  throw SpekeError(ErrorCode::UnknownPreset,
                   "unknown attack '" + std::string(attack_name) + "'");
}

namespace {

struct MatrixRow {
  Variant variant;
  std::array<std::string, 11> preset_cells; // RND RND-E IKA EKA WA SA IMP SS PFS UKS MAL
  std::array<std::string, 3> none_cells;    // IMP SS MAL
};

constexpr const char* kCheck = "✓"; // verified / attack resisted
constexpr const char* kCross = "×"; // attack found
constexpr const char* kNa = "n/a";

std::size_t display_width(const std::string& cell)
{
  std::size_t w = 0;
  for (unsigned char c : cell) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad_left(const std::string& cell, std::size_t width)
{
  std::string out;
  for (std::size_t i = display_width(cell); i < width; ++i) out += ' ';
  return out + cell;
}

std::string pad_right(const std::string& cell, std::size_t width)
{
  std::string out = cell;
  for (std::size_t i = display_width(cell); i < width; ++i) out += ' ';
  return out;
}

std::string render_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows)
{
  std::vector<std::size_t> widths;
  widths.reserve(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    std::size_t w = display_width(headers[c]);
    for (const auto& row : rows) {
      w = std::max(w, display_width(row[c]));
    }
    widths.push_back(w);
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << (c == 0 ? "" : "  ")
        << (c == 0 ? pad_right(headers[c], widths[c]) : pad_left(headers[c], widths[c]));
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < headers.size(); ++c) {
      out << (c == 0 ? "" : "  ")
          << (c == 0 ? pad_right(row[c], widths[c]) : pad_left(row[c], widths[c]));
    }
    out << '\n';
  }
  return out.str();
}

} // namespace

MatrixReport security_matrix(const GroupParamsPtr& params, std::uint64_t seed)
{
  const std::vector<Variant> variants = {Variant::Jablon96, Variant::IeeeP1363_2,
                                         Variant::Iso11770_4_2006, Variant::Patch2014,
                                         Variant::PSpeke2017};
  auto verdict = [](bool attack_succeeded) {
    return std::string(attack_succeeded ? kCross : kCheck);
  };

  std::vector<MatrixRow> matrix;
  std::uint64_t cell_seed = seed;
  for (Variant v : variants) {
    const ConfirmationMethod preset = preset_confirmation(v);
    AttackConfig base{v, preset, params, 0, false, {}};

    HonestConfig honest;
    honest.variant = v;
    honest.confirm = preset;
    honest.params = params;
    honest.password_a = default_password();
    honest.seed = cell_seed++;
    const RunResult honest_run = run_honest_exchange(honest);
    const bool honest_ok = honest_run.by_label("A").phase == Phase::Accepted &&
                           honest_run.by_label("B").phase == Phase::Accepted &&
                           honest_run.keys_equal("A", "B");

    base.seed = cell_seed++;
    const AttackOutcome imp = impersonation_attack(base);
    base.seed = cell_seed++;
    const AttackOutcome ss = session_swap_attack(base);
    base.seed = cell_seed++;
    const AttackOutcome mal = malleability_attack(base);

    AttackConfig none_cfg{v, ConfirmationMethod::None, params, 0, false, {}};
    none_cfg.seed = cell_seed++;
    const AttackOutcome imp_n = impersonation_attack(none_cfg);
    none_cfg.seed = cell_seed++;
    const AttackOutcome ss_n = session_swap_attack(none_cfg);
    none_cfg.seed = cell_seed++;
    const AttackOutcome mal_n = malleability_attack(none_cfg);

    MatrixRow row;
    row.variant = v;
    row.preset_cells = {
        std::to_string(round_count(ConfirmationMethod::None)), // RND
        std::to_string(round_count(preset)),                   // RND-E
        kNa,                                                   // IKA (formal-only)
        honest_ok && !imp.success ? kCheck : kCross,           // EKA
        kNa,                                                   // WA (formal-only)
        kNa,                                                   // SA (formal-only)
        verdict(imp.success),                                  // IMP
        verdict(ss.success),                                   // SS
        kNa,                                                   // PFS (formal-only)
        verdict(imp.uks_condition.value_or(false)),            // UKS
        verdict(mal.success),                                  // MAL
    };
    row.none_cells = {verdict(imp_n.success), verdict(ss_n.success), verdict(mal_n.success)};
    matrix.push_back(std::move(row));
  }

  const std::vector<std::string> headers = {"variant", "RND", "RND-E", "IKA", "EKA", "WA",
                                            "SA",      "IMP", "SS",    "PFS", "UKS", "MAL"};
  std::vector<std::vector<std::string>> rows;
  for (const MatrixRow& row : matrix) {
    std::vector<std::string> cells = {std::string(to_string(row.variant))};
    cells.insert(cells.end(), row.preset_cells.begin(), row.preset_cells.end());
    rows.push_back(std::move(cells));
  }

  const std::vector<std::string> none_headers = {"variant", "IMP", "SS", "MAL"};
  std::vector<std::vector<std::string>> none_rows;
  for (const MatrixRow& row : matrix) {
    std::vector<std::string> cells = {std::string(to_string(row.variant))};
    cells.insert(cells.end(), row.none_cells.begin(), row.none_cells.end());
    none_rows.push_back(std::move(cells));
  }

  MatrixReport report;
  std::ostringstream text;
  text << "SPEKE variant security matrix\n"
       << "cells: " << kCheck << " = holds / attack resisted, " << kCross
       << " = attack found, n/a = formal-model-only\n"
       << "per-variant preset confirmation method in force\n\n"
       << render_table(headers, rows) << '\n'
       << "implicit mode (confirmation = none)\n\n"
       << render_table(none_headers, none_rows);
  report.text = text.str();

  std::ostringstream kv;
  for (const MatrixRow& row : matrix) {
    for (std::size_t c = 0; c < row.preset_cells.size(); ++c) {
      kv << "variant=" << to_string(row.variant) << " mode=preset column=" << headers[c + 1]
         << " value=" << row.preset_cells[c] << '\n';
    }
    for (std::size_t c = 0; c < row.none_cells.size(); ++c) {
      kv << "variant=" << to_string(row.variant) << " mode=none column=" << none_headers[c + 1]
         << " value=" << row.none_cells[c] << '\n';
    }
  }
  report.kv = kv.str();
  return report;
}

std::string matrix_diff(const std::string& got, const std::string& want)
{
  if (got == want) {
    return {};
  }
  auto split_lines = [](const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  };
  auto tokenize = [](const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
  };

  const std::vector<std::string> got_lines = split_lines(got);
  const std::vector<std::string> want_lines = split_lines(want);
  std::vector<std::string> header;
  for (std::size_t i = 0; i < std::max(got_lines.size(), want_lines.size()); ++i) {
    const std::string g = i < got_lines.size() ? got_lines[i] : "";
    const std::string w = i < want_lines.size() ? want_lines[i] : "";
    if (!w.empty() && tokenize(w).size() > 1 && tokenize(w)[0] == "variant") {
      header = tokenize(w);
    }
    if (g == w) continue;

    const std::vector<std::string> gt = tokenize(g);
    const std::vector<std::string> wt = tokenize(w);
    if (!header.empty() && !wt.empty() && gt.size() == wt.size() &&
        header.size() == wt.size()) {
      for (std::size_t c = 0; c < wt.size(); ++c) {
        if (gt[c] != wt[c]) {
          return "cell mismatch: variant=" + wt[0] + " column=" + header[c] +
                 " got=" + gt[c] + " want=" + wt[c];
        }
      }
    }
    return "line " + std::to_string(i + 1) + " differs: got '" + g + "' want '" + w + "'";
  }
  return "trailing content differs";
}

} // namespace speke
