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

// speke: honest runs, scripted attacks, the variant verdict matrix, and a
// two-process socket demo of the handshake.
//
// Exit codes: 0 expectation met, 1 protocol failure or verdict mismatch,
// 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "speke/attacks.hpp"
#include "speke/presets.hpp"

#include "matrix_golden.hpp"
#include "net.hpp"

namespace {

using namespace speke;

constexpr int kExitOk = 0;
constexpr int kExitProtocol = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string variant = "p-speke-2017";
  std::string confirm = "preset";
  std::string group = "toy23";
  std::uint64_t seed = 0;
  std::string password = "password";
  std::string password_b;
  std::string id_a = "A";
  std::string id_b = "B";
  bool dup_detect = false;
  bool show_trace = false;
};

void add_common_options(CLI::App* sub, CommonOpts& o)
{
  sub->add_option("--variant", o.variant,
                  "protocol variant: jablon96, ieee-p1363-2, iso-11770-4-2006, patch-2014, "
                  "p-speke-2017")
      ->capture_default_str();
  sub->add_option("--confirm", o.confirm,
                  "confirmation method: none, jablon-double-hash, tagged-hash-3-4, "
                  "symmetric-hash, symmetric-mac, or 'preset'")
      ->capture_default_str();
  sub->add_option("--group", o.group, "group preset: toy23, modp2048")->capture_default_str();
  sub->add_option("--seed", o.seed, "64-bit rng seed")
      ->envname("SPEKE_LAB_SEED")
      ->capture_default_str();
  sub->add_option("--password", o.password, "shared password")->capture_default_str();
  sub->add_option("--password-b", o.password_b, "override the responder's password");
  sub->add_option("--id-a", o.id_a, "initiator identity")->capture_default_str();
  sub->add_option("--id-b", o.id_b, "responder identity")->capture_default_str();
  sub->add_flag("--dup-detect", o.dup_detect, "abort on duplicated payloads");
  sub->add_flag("--trace", o.show_trace, "print the channel event trace");
  sub->set_config("--config", "", "flat key=value config file");
}

struct ResolvedOpts {
  Variant variant;
  ConfirmationMethod confirm;
  GroupParamsPtr params;
  bool historical_pairing;
};

ResolvedOpts resolve(const CommonOpts& o)
{
  const auto v = variant_from_string(o.variant);
  if (!v) {
    throw UsageError("unknown variant '" + o.variant + "'");
  }
  ConfirmationMethod confirm;
  if (o.confirm == "preset") {
    confirm = preset_confirmation(*v);
  } else {
    const auto m = confirmation_from_string(o.confirm);
    if (!m) {
      throw UsageError("unknown confirmation method '" + o.confirm + "'");
    }
    confirm = *m;
  }
  GroupParamsPtr params;
  try {
    params = group_preset(o.group);
  } catch (const SpekeError&) {
    throw UsageError("unknown group preset '" + o.group + "'");
  }
  const bool historical =
      confirm == preset_confirmation(*v) || confirm == ConfirmationMethod::None;
  return ResolvedOpts{*v, confirm, std::move(params), historical};
}

void print_session_line(const SessionReport& s)
{
  std::cout << s.label << ": role=" << to_string(s.role) << " peer=" << s.peer_belief
            << " phase=" << to_string(s.phase);
  if (s.abort_reason) {
    std::cout << " reason=" << to_string(*s.abort_reason);
  }
  if (s.key) {
    std::cout << " key=" << to_hex(s.key->bytes);
  }
  std::cout << '\n';
}

int cmd_run(const CommonOpts& opts)
{
  const ResolvedOpts r = resolve(opts);

  HonestConfig cfg;
  cfg.variant = r.variant;
  cfg.confirm = r.confirm;
  cfg.params = r.params;
  cfg.id_a = Identity{opts.id_a, std::nullopt};
  cfg.id_b = Identity{opts.id_b, std::nullopt};
  cfg.password_a = to_bytes(opts.password);
  cfg.password_b = to_bytes(opts.password_b);
  cfg.seed = opts.seed;
  cfg.dup_detect = opts.dup_detect;

  const RunResult run = run_honest_exchange(cfg);

  std::cout << "run variant=" << to_string(r.variant) << " confirm=" << to_string(r.confirm)
            << " group=" << opts.group << " seed=" << opts.seed
            << " rounds=" << run.rounds_used << '\n';
  if (!r.historical_pairing) {
    std::cout << "note: non-historical variant/confirmation pairing\n";
  }
  for (const SessionReport& s : run.sessions) {
    print_session_line(s);
  }
  const bool keys_equal = run.keys_equal("A", "B");
  std::cout << "keys_equal=" << (keys_equal ? "true" : "false") << '\n';
  if (opts.show_trace) {
    std::cout << run.trace.to_text();
  }

  const Phase want = r.confirm == ConfirmationMethod::None ? Phase::Keyed : Phase::Accepted;
  const bool ok = keys_equal && run.by_label("A").phase == want &&
                  run.by_label("B").phase == want;
  return ok ? kExitOk : kExitProtocol;
}

int cmd_attack(const std::string& name, const CommonOpts& opts, const std::string& z_str,
               const std::string& r_str, const std::string& expect,
               const std::string& victim_holds)
{
  const ResolvedOpts r = resolve(opts);

  AttackConfig cfg;
  cfg.variant = r.variant;
  cfg.confirm = r.confirm;
  cfg.params = r.params;
  cfg.seed = opts.seed;
  cfg.dup_detect = opts.dup_detect;
  cfg.password = to_bytes(opts.password);

  std::optional<Scalar> z;
  if (!z_str.empty()) {
    z = Scalar{mpz_class(z_str)};
  }

  AttackOutcome outcome;
  if (name == "impersonation") {
    outcome = impersonation_attack(cfg, z);
  } else if (name == "malleability") {
    outcome = malleability_attack(cfg, z);
  } else if (name == "session-swap") {
    outcome = session_swap_attack(cfg);
  } else if (name == "exp-equivalence") {
    const mpz_class exponent(r_str.empty() ? "3" : r_str);
    if (victim_holds != "s" && victim_holds != "s-pow-r") {
      throw UsageError("--victim-holds must be 's' or 's-pow-r'");
    }
    outcome = exp_equivalence_attack(cfg, cfg.password, exponent, victim_holds == "s-pow-r");
  } else {
    throw UsageError("unknown attack '" + name +
                     "' (expected impersonation, malleability, session-swap or "
                     "exp-equivalence)");
  }

  std::cout << outcome.report_text();
  if (opts.show_trace) {
    std::cout << outcome.trace.to_text();
  }

  bool expected_success;
  if (expect == "paper") {
    expected_success = expected_attack_success(name, r.variant, r.confirm);
  } else if (expect == "success") {
    expected_success = true;
  } else if (expect == "failure") {
    expected_success = false;
  } else {
    throw UsageError("--expect must be paper, success or failure");
  }
  const bool matched = outcome.success == expected_success;
  std::cout << "expected=" << (expected_success ? "success" : "failure")
            << " matched=" << (matched ? "true" : "false") << '\n';
  return matched ? kExitOk : kExitProtocol;
}

int cmd_matrix(const std::string& group, std::uint64_t seed, const std::string& out_path,
               const std::string& kv_out_path, const std::string& golden_path)
{
  GroupParamsPtr params;
  try {
    params = group_preset(group);
  } catch (const SpekeError&) {
    throw UsageError("unknown group preset '" + group + "'");
  }

  const MatrixReport report = security_matrix(params, seed);
  std::cout << report.text;

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << report.text;
  }
  if (!kv_out_path.empty()) {
    std::ofstream out(kv_out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + kv_out_path + "'");
    out << report.kv;
  }

  std::string golden;
  if (golden_path.empty()) {
    golden = speke_cli::kMatrixGoldenText;
  } else {
    std::ifstream in(golden_path, std::ios::binary);
    if (!in) throw UsageError("cannot read golden file '" + golden_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    golden = buf.str();
  }

  const std::string diff = matrix_diff(report.text, golden);
  if (!diff.empty()) {
    std::cout << "golden mismatch: " << diff << '\n';
    return kExitProtocol;
  }
  std::cout << "golden match\n";
  return kExitOk;
}

SessionConfig socket_session_config(const CommonOpts& opts, const ResolvedOpts& r, Role role)
{
  SessionConfig cfg;
  cfg.role = role;
  cfg.self_id = Identity{role == Role::Initiator ? opts.id_a : opts.id_b, std::nullopt};
  cfg.peer_id = Identity{role == Role::Initiator ? opts.id_b : opts.id_a, std::nullopt};
  cfg.password = to_bytes(opts.password);
  cfg.variant = r.variant;
  cfg.confirm = r.confirm;
  cfg.params = r.params;
  cfg.detect_duplicates = false;
  cfg.registry = nullptr;
  return cfg;
}

int socket_handshake(const speke_cli::Socket& sock, SessionConfig cfg, std::uint64_t seed)
{
  const GroupParamsPtr params = cfg.params;
  const ConfirmationMethod method = cfg.confirm;
  Mt19937Source rng(seed);
  Session session = Session::start(std::move(cfg), rng);
  const bool initiator = session.role() == Role::Initiator;

  if (initiator) {
    speke_cli::send_frame(sock, session.exchange_message());
    session.process_exchange(speke_cli::recv_frame(sock, params));
  } else {
    session.process_exchange(speke_cli::recv_frame(sock, params));
    if (session.phase() != Phase::Aborted) {
      speke_cli::send_frame(sock, session.exchange_message());
    }
  }

  if (session.phase() == Phase::Keyed && method != ConfirmationMethod::None) {
    if (is_symmetric_confirmation(method)) {
      speke_cli::send_frame(sock, session.make_confirmation());
      session.verify_confirmation(speke_cli::recv_frame(sock, params));
    } else if (initiator) {
      speke_cli::send_frame(sock, session.make_confirmation());
      session.verify_confirmation(speke_cli::recv_frame(sock, params));
    } else {
      session.verify_confirmation(speke_cli::recv_frame(sock, params));
      if (session.phase() != Phase::Aborted) {
        speke_cli::send_frame(sock, session.make_confirmation());
      }
    }
  }

  std::cout << "peer=" << session.peer_id().rendered()
            << " phase=" << to_string(session.phase());
  if (session.phase() == Phase::Aborted && session.abort_reason()) {
    std::cout << " reason=" << to_string(*session.abort_reason());
  }
  if (session.has_key()) {
    std::cout << " key=" << to_hex(session.key().bytes);
  }
  std::cout << std::endl;

  const Phase want = method == ConfirmationMethod::None ? Phase::Keyed : Phase::Accepted;
  return session.phase() == want ? kExitOk : kExitProtocol;
}

int cmd_serve(const std::string& listen_addr, const CommonOpts& opts)
{
  const ResolvedOpts r = resolve(opts);
  const speke_cli::HostPort where = speke_cli::parse_host_port(listen_addr);

  std::uint16_t port = 0;
  const speke_cli::Socket listener = speke_cli::tcp_listen(where, &port);
  std::cout << "listening on " << (where.host.empty() ? "0.0.0.0" : where.host) << ':' << port
            << std::endl;

  const speke_cli::Socket conn = speke_cli::tcp_accept(listener);
  return socket_handshake(conn, socket_session_config(opts, r, Role::Responder), opts.seed);
}

int cmd_connect(const std::string& connect_addr, const CommonOpts& opts)
{
  const ResolvedOpts r = resolve(opts);
  const speke_cli::HostPort where = speke_cli::parse_host_port(connect_addr);
  const speke_cli::Socket conn = speke_cli::tcp_connect(where);
  return socket_handshake(conn, socket_session_config(opts, r, Role::Initiator), opts.seed);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"SPEKE variant laboratory: honest runs, attacks, verdict matrix"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "one honest in-memory exchange");
  add_common_options(run, run_opts);

  CommonOpts attack_opts;
  std::string attack_name;
  std::string z_str, r_str, victim_holds = "s-pow-r", expect = "paper";
  CLI::App* attack = app.add_subcommand("attack", "run a scripted adversary");
  attack->add_option("name", attack_name,
                     "impersonation, malleability, session-swap, exp-equivalence")
      ->required();
  add_common_options(attack, attack_opts);
  attack->add_option("--z", z_str, "adversary exponent (decimal)");
  attack->add_option("--r", r_str, "password-equivalence exponent (decimal)");
  attack->add_option("--victim-holds", victim_holds, "'s' or 's-pow-r'")
      ->capture_default_str();
  attack->add_option("--expect", expect, "paper, success or failure")->capture_default_str();

  std::string matrix_group = "toy23", matrix_out, matrix_kv_out, matrix_golden;
  std::uint64_t matrix_seed = 0;
  CLI::App* matrix = app.add_subcommand("matrix", "attack-by-variant verdict matrix");
  matrix->add_option("--group", matrix_group, "group preset")->capture_default_str();
  matrix->add_option("--seed", matrix_seed, "64-bit rng seed")
      ->envname("SPEKE_LAB_SEED")
      ->capture_default_str();
  matrix->add_option("--out", matrix_out, "write the text table here");
  matrix->add_option("--kv-out", matrix_kv_out, "write key-value records here");
  matrix->add_option("--golden", matrix_golden,
                     "compare against this golden file instead of the built-in copy");
  matrix->set_config("--config", "", "flat key=value config file");

  CommonOpts serve_opts;
  std::string listen_addr;
  CLI::App* serve = app.add_subcommand("serve", "answer one handshake over TCP");
  serve->add_option("--listen", listen_addr, "host:port (port 0 picks one)")->required();
  add_common_options(serve, serve_opts);

  CommonOpts connect_opts;
  std::string connect_addr;
  CLI::App* connect = app.add_subcommand("connect", "initiate one handshake over TCP");
  connect->add_option("--connect", connect_addr, "host:port")->required();
  add_common_options(connect, connect_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (attack->parsed())
      return cmd_attack(attack_name, attack_opts, z_str, r_str, expect, victim_holds);
    if (matrix->parsed())
      return cmd_matrix(matrix_group, matrix_seed, matrix_out, matrix_kv_out, matrix_golden);
    if (serve->parsed()) return cmd_serve(listen_addr, serve_opts);
    if (connect->parsed()) return cmd_connect(connect_addr, connect_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpekeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitProtocol;
  }
  return kExitUsage;
}
