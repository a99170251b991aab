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

#ifndef SPEKE_SIMNET_HPP
#define SPEKE_SIMNET_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "speke/protocol.hpp"

// Deterministic in-memory duplex channel, driven in lockstep rounds. Every
// in-flight message passes through the registered adversary before delivery.
// The simulator is single-threaded; determinism comes from fixed iteration
// order and seeded randomness only.

namespace speke {

enum class EventKind { Sent, Delivered, Modified, Dropped, KeyDerived, Accepted, Aborted };

std::string_view to_string(EventKind k);

struct Event {
  EventKind kind;
  int round = 0;
  std::string from;   // sending endpoint ("" when not applicable)
  std::string to;     // receiving endpoint / subject session
  std::string detail; // message summary, key hex, or abort reason
};

struct EventTrace {
  std::vector<Event> events;

  /// Line-delimited structured text, one event per line.
  std::string to_text() const;
};

// The adversary's verdict on one in-flight message. Forward and Modify
// deliver to the message's addressed endpoint, Drop swallows it, Inject
// addresses an extra message to any registered endpoint.
struct Forward {};
struct Drop {};
struct Modify {
  Message msg;
};
struct Inject {
  std::string target;
  Message msg;
};
using InterceptAction = std::variant<Forward, Modify, Drop, Inject>;

/// Channel-level adversary. The interface exposes wire messages and endpoint
/// labels only: passwords, generators and ephemeral scalars never reach it.
class Adversary {
public:
  virtual ~Adversary() = default;

  /// Called once per in-flight message. The returned list may contain at
  /// most one of Forward/Modify/Drop (defaults to Forward if none is given)
  /// plus any number of Inject actions.
  virtual std::vector<InterceptAction> on_message(int round, const std::string& from,
                                                  const std::string& to, const Message& msg) = 0;
};

struct EndpointSpec {
  std::string label;
  SessionConfig session;
  std::string route_to;          // default delivery target for this endpoint
  bool send_on_receipt = false;  // hold the exchange message until one arrives
};

struct SessionReport {
  std::string label;
  Role role = Role::Initiator;
  std::string peer_belief; // rendered identity this session believes it talks to
  Phase phase = Phase::Created;
  std::optional<ErrorCode> abort_reason;
  std::optional<SessionKey> key;
  ByteString own_element; // canonical encoding of this session's exchange element
};

struct RunResult {
  std::vector<SessionReport> sessions;
  int rounds_used = 0;
  EventTrace trace;

  const SessionReport& by_label(const std::string& label) const;
  bool keys_equal(const std::string& a, const std::string& b) const;
};

inline constexpr int kDefaultStepBudget = 64;

class Simulator {
public:
  explicit Simulator(std::uint64_t seed);

  /// Creates and starts the session. Sessions of the same party (same
  /// identity base name) share one sent-payload registry, which is what the
  /// optional duplicate-message check consults.
  void add_endpoint(const EndpointSpec& spec);

  void set_adversary(Adversary* adversary) { adversary_ = adversary; }

  /// Runs rounds until quiescence or until the step budget is exhausted,
  /// then times out every session that is still mid-protocol.
  RunResult run(int max_rounds = kDefaultStepBudget);

  RandomSource& rng() { return rng_; }

private:
  struct Endpoint {
    EndpointSpec spec;
    std::optional<Session> session;
    std::vector<Message> inbox;
    bool exchange_emitted = false;
    bool exchange_received = false;
    Phase last_phase = Phase::Created;
    bool key_logged = false;
  };

  struct Outbound {
    std::string from;
    std::string to;
    Message msg;
  };

  void dispatch(Endpoint& ep, const Message& msg);
  void note_transitions(Endpoint& ep, int round);
  void deliver(const std::string& from, const std::string& to, const Message& msg, int round);
  static std::string describe(const Message& msg);

  Mt19937Source rng_;
  std::vector<std::string> order_;
  std::map<std::string, Endpoint> endpoints_;
  std::map<std::string, std::shared_ptr<SentPayloadRegistry>> registries_;
  Adversary* adversary_ = nullptr;
  EventTrace trace_;
  int round_ = 0;
  int rounds_used_ = 0;
};

/// Configuration for a plain two-party run between "A" (initiator) and "B"
/// (responder). password_b falls back to password_a when empty.
struct HonestConfig {
  Variant variant = Variant::PSpeke2017;
  ConfirmationMethod confirm = ConfirmationMethod::SymmetricHash;
  GroupParamsPtr params;
  Identity id_a{"A", std::nullopt};
  Identity id_b{"B", std::nullopt};
  ByteString password_a;
  ByteString password_b;
  std::uint64_t seed = 0;
  bool dup_detect = false;
  int budget = kDefaultStepBudget;
};

/// Full honest protocol run; both sessions end Accepted (or Keyed when the
/// method is None). Aborts are reported in the result, not thrown.
RunResult run_honest_exchange(const HonestConfig& cfg);

/// Same two-party topology with an adversary on the channel.
RunResult run_with_adversary(const HonestConfig& cfg, Adversary& adversary);

} // namespace speke

#endif // SPEKE_SIMNET_HPP
