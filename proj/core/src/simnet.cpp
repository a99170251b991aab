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

#include "speke/simnet.hpp"

#include <algorithm>
#include <sstream>

namespace speke {

std::string_view to_string(EventKind k)
{
  switch (k) {
    case EventKind::Sent: return "SENT";
    case EventKind::Delivered: return "DELIVERED";
    case EventKind::Modified: return "MODIFIED";
    case EventKind::Dropped: return "DROPPED";
    case EventKind::KeyDerived: return "KEY_DERIVED";
    case EventKind::Accepted: return "ACCEPTED";
    case EventKind::Aborted: return "ABORTED";
  }
  return "?";
}

std::string EventTrace::to_text() const
{
  std::ostringstream out;
  for (const Event& e : events) {
    out << to_string(e.kind) << " round=" << e.round;
    if (!e.from.empty()) out << " from=" << e.from;
    if (!e.to.empty()) out << " to=" << e.to;
    if (!e.detail.empty()) out << ' ' << e.detail;
    out << '\n';
  }
  return out.str();
}

const SessionReport& RunResult::by_label(const std::string& label) const
{
  for (const SessionReport& s : sessions) {
    if (s.label == label) return s;
  }
  throw SpekeError(ErrorCode::UnknownPreset, "no session labelled '" + label + "'");
}

bool RunResult::keys_equal(const std::string& a, const std::string& b) const
{
  const auto& ka = by_label(a).key;
  const auto& kb = by_label(b).key;
  return ka && kb && ka->bytes == kb->bytes;
}

Simulator::Simulator(std::uint64_t seed) : rng_(seed) {}

void Simulator::add_endpoint(const EndpointSpec& spec)
{
  if (endpoints_.count(spec.label) != 0) {
    throw SpekeError(ErrorCode::UnknownPreset, "duplicate endpoint label '" + spec.label + "'");
  }
  Endpoint ep;
  ep.spec = spec;
  // One registry per party: concurrent sessions of the same base identity
  // see each other's sent payloads.
  auto& registry = registries_[spec.session.self_id.base_name];
  if (!registry) {
    registry = std::make_shared<SentPayloadRegistry>();
  }
  SessionConfig cfg = spec.session;
  if (!cfg.registry) {
    cfg.registry = registry;
  }
  ep.session = Session::start(std::move(cfg), rng_);
  ep.last_phase = ep.session->phase();
  order_.push_back(spec.label);
  endpoints_.emplace(spec.label, std::move(ep));
}

std::string Simulator::describe(const Message& msg)
{
  if (const auto* ex = std::get_if<ExchangeMessage>(&msg)) {
    return "kind=EXCHANGE sender=" + ex->sender +
           " element=" + to_hex(encode_element(ex->element));
  }
  const auto& cm = std::get<ConfirmMessage>(msg);
  return "kind=CONFIRM tag=" + to_hex(cm.tag);
}

void Simulator::note_transitions(Endpoint& ep, int round)
{
  Session& s = *ep.session;
  if (s.has_key() && !ep.key_logged) {
    ep.key_logged = true;
    trace_.events.push_back({EventKind::KeyDerived, round, "", ep.spec.label,
                             "key=" + to_hex(s.key().bytes)});
  }
  if (s.phase() != ep.last_phase) {
    if (s.phase() == Phase::Accepted) {
      trace_.events.push_back({EventKind::Accepted, round, "", ep.spec.label, ""});
    } else if (s.phase() == Phase::Aborted) {
      const auto reason = s.abort_reason();
      trace_.events.push_back({EventKind::Aborted, round, "", ep.spec.label,
                               std::string("reason=") +
                                   std::string(reason ? to_string(*reason) : "unknown")});
    }
    ep.last_phase = s.phase();
  }
}

void Simulator::dispatch(Endpoint& ep, const Message& msg)
{
  Session& s = *ep.session;
  if (s.phase() == Phase::Aborted) {
    return; // dead session, message ignored
  }
  try {
    if (is_exchange(msg)) {
      s.process_exchange(msg);
      ep.exchange_received = true;
    } else {
      s.verify_confirmation(msg);
    }
  } catch (const SpekeError& err) {
    // Contract violations caused by adversarial scheduling become aborts at
    // the simulation layer.
    s.force_abort(err.code());
  }
}

void Simulator::deliver(const std::string& from, const std::string& to, const Message& msg,
                        int round)
{
  auto it = endpoints_.find(to);
  if (it == endpoints_.end()) {
    trace_.events.push_back(
        {EventKind::Dropped, round, from, to, "detail=no-such-endpoint"});
    return;
  }
  trace_.events.push_back({EventKind::Delivered, round, from, to, describe(msg)});
  it->second.inbox.push_back(msg);
}

RunResult Simulator::run(int max_rounds)
{
  for (round_ = 1; round_ <= max_rounds; ++round_) {
    // Phase 1: consume last round's deliveries.
    for (const std::string& label : order_) {
      Endpoint& ep = endpoints_.at(label);
      for (const Message& msg : ep.inbox) {
        dispatch(ep, msg);
        note_transitions(ep, round_);
      }
      ep.inbox.clear();
    }

    // Phase 2: collect this round's sends.
    std::vector<Outbound> outbound;
    for (const std::string& label : order_) {
      Endpoint& ep = endpoints_.at(label);
      Session& s = *ep.session;
      if (s.phase() == Phase::Aborted) continue;
      if (!ep.exchange_emitted && (!ep.spec.send_on_receipt || ep.exchange_received)) {
        ep.exchange_emitted = true;
        outbound.push_back({label, ep.spec.route_to, s.exchange_message()});
      } else if (s.confirmation_due()) {
        outbound.push_back({label, ep.spec.route_to, s.make_confirmation()});
        note_transitions(ep, round_);
      }
    }

    bool inflight = !outbound.empty();

    // Phase 3: adversary verdicts and delivery.
    for (const Outbound& ob : outbound) {
      trace_.events.push_back({EventKind::Sent, round_, ob.from, ob.to, describe(ob.msg)});
      std::vector<InterceptAction> actions;
      if (adversary_ != nullptr) {
        actions = adversary_->on_message(round_, ob.from, ob.to, ob.msg);
      }
      if (actions.empty()) {
        actions.push_back(Forward{});
      }
      bool primary_seen = false;
      for (const InterceptAction& action : actions) {
        if (std::holds_alternative<Forward>(action)) {
          primary_seen = true;
          deliver(ob.from, ob.to, ob.msg, round_);
        } else if (const auto* mod = std::get_if<Modify>(&action)) {
          primary_seen = true;
          trace_.events.push_back(
              {EventKind::Modified, round_, ob.from, ob.to, describe(mod->msg)});
          deliver(ob.from, ob.to, mod->msg, round_);
        } else if (std::holds_alternative<Drop>(action)) {
          primary_seen = true;
          trace_.events.push_back({EventKind::Dropped, round_, ob.from, ob.to, ""});
        } else if (const auto* inj = std::get_if<Inject>(&action)) {
          deliver(ob.from, inj->target, inj->msg, round_);
        }
      }
      if (!primary_seen) {
        deliver(ob.from, ob.to, ob.msg, round_);
      }
    }

    if (inflight) {
      rounds_used_ = round_;
    } else {
      bool pending = false;
      for (const std::string& label : order_) {
        if (!endpoints_.at(label).inbox.empty()) pending = true;
      }
      if (!pending) break; // quiescent
    }
  }

  // Anything still mid-protocol has timed out. Keyed with method None is the
  // completed state for that mode, not a timeout.
  const int final_round = std::min(round_, max_rounds);
  for (const std::string& label : order_) {
    Endpoint& ep = endpoints_.at(label);
    Session& s = *ep.session;
    const bool none_final =
        s.confirmation_method() == ConfirmationMethod::None && s.phase() == Phase::Keyed;
    if (s.phase() != Phase::Accepted && s.phase() != Phase::Aborted && !none_final) {
      s.force_abort(ErrorCode::Timeout);
      note_transitions(ep, final_round);
    }
  }

  RunResult result;
  result.rounds_used = rounds_used_;
  result.trace = trace_;
  for (const std::string& label : order_) {
    const Endpoint& ep = endpoints_.at(label);
    const Session& s = *ep.session;
    SessionReport report;
    report.label = label;
    report.role = s.role();
    report.peer_belief = s.peer_id().rendered();
    report.phase = s.phase();
    report.abort_reason = s.abort_reason();
    if (s.has_key()) {
      report.key = s.key();
    }
    report.own_element = encode_element(s.own_element());
    result.sessions.push_back(std::move(report));
  }
  return result;
}

namespace {

void add_two_party_endpoints(Simulator& sim, const HonestConfig& cfg)
{
  const ByteString& pw_b = cfg.password_b.empty() ? cfg.password_a : cfg.password_b;
  sim.add_endpoint({"A",
                    SessionConfig{Role::Initiator, cfg.id_a, cfg.id_b, cfg.password_a,
                                  cfg.variant, cfg.confirm, cfg.params, cfg.dup_detect, nullptr},
                    "B", false});
  sim.add_endpoint({"B",
                    SessionConfig{Role::Responder, cfg.id_b, cfg.id_a, pw_b, cfg.variant,
                                  cfg.confirm, cfg.params, cfg.dup_detect, nullptr},
                    "A", false});
}

} // namespace

RunResult run_honest_exchange(const HonestConfig& cfg)
{
  Simulator sim(cfg.seed);
  add_two_party_endpoints(sim, cfg);
  return sim.run(cfg.budget);
}

RunResult run_with_adversary(const HonestConfig& cfg, Adversary& adversary)
{
  Simulator sim(cfg.seed);
  add_two_party_endpoints(sim, cfg);
  sim.set_adversary(&adversary);
  return sim.run(cfg.budget);
}

} // namespace speke
