/*
 * Copyright 2026 The dkd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// dkd command-line tool. Talks to the simulator only through the C API.
//
// Exit codes: 0 success or certified, 1 usage or I/O error, 2 round bound or
// verification cap failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dkd/dkd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBound = 2;

struct TraceDeleter {
  void operator()(dkd_trace* t) const { dkd_trace_free(t); }
};
struct SessionDeleter {
  void operator()(dkd_session* s) const { dkd_session_free(s); }
};
struct ReportDeleter {
  void operator()(dkd_report* r) const { dkd_report_free(r); }
};
using TracePtr = std::unique_ptr<dkd_trace, TraceDeleter>;
using SessionPtr = std::unique_ptr<dkd_session, SessionDeleter>;
using ReportPtr = std::unique_ptr<dkd_report, ReportDeleter>;

struct Config {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t l = 0;
  std::string adversary = "none";
  uint64_t seed = 0;
  std::string script;
  uint64_t rounds = 100;
  uint64_t round_limit = 0;
  std::string out;
  std::string format = "trace";
  uint32_t max_n = 0;
  uint64_t max_states = 0;
  // sweep
  uint32_t n_min = 4, n_max = 12, k_min = 2, k_max = 4;
  std::vector<std::string> adversaries{"none", "random", "good-chain"};
};

// Error raised by a subcommand; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void raise(int code, const std::string& message) { throw Failure{code, message}; }

int exit_code_for(dkd_status s) {
  return s == DKD_CAP_EXCEEDED ? kExitBound : kExitUsage;
}

void check(dkd_status s) {
  if (s != DKD_OK) raise(exit_code_for(s), dkd_last_error());
}

template <typename Fill>
std::string read_string(Fill fill) {
  size_t needed = 0;
  check(fill(nullptr, 0, &needed));
  std::string buf(needed, '\0');
  check(fill(buf.data(), buf.size(), &needed));
  buf.resize(needed ? needed - 1 : 0);
  return buf;
}

dkd_params to_params(const Config& c) {
  return dkd_params{c.n, c.k, c.l, 0, c.round_limit};
}

// Validates parameters and prints any warnings.
void validate(const dkd_params& p) {
  const auto warnings = read_string([&](char* b, size_t cap, size_t* need) {
    return dkd_validate_params(&p, b, cap, need);
  });
  if (!warnings.empty()) std::cerr << "warning: " << warnings << '\n';
}

std::vector<int64_t> read_script(const std::string& path, uint32_t n) {
  std::ifstream in(path);
  if (!in) raise(kExitUsage, "cannot open script " + path);
  std::vector<int64_t> out;
  std::string line;
  for (size_t no = 1; std::getline(in, line); ++no) {
    int64_t e = DKD_NO_EDGE;
    if (dkd_parse_edge_choice(line.c_str(), n, &e) != DKD_OK) {
      raise(kExitUsage, path + ":" + std::to_string(no) + ": " + dkd_last_error());
    }
    out.push_back(e);
  }
  return out;
}

std::string serialize(const dkd_trace* t) {
  return read_string([&](char* b, size_t cap, size_t* need) {
    return dkd_trace_serialize(t, b, cap, need);
  });
}

// Writes the trace to --out, or to stdout when no path was given and the
// format asks for it. Returns true when the trace went to stdout.
bool emit_trace(const dkd_trace* t, const Config& c) {
  if (!c.out.empty()) {
    check(dkd_trace_write_file(t, c.out.c_str()));
    return false;
  }
  if (c.format != "trace") return false;
  std::cout << serialize(t);
  std::cout.flush();
  if (!std::cout) raise(kExitUsage, "write to standard output failed");
  return true;
}

std::string render(const dkd_session* s, int64_t edge) {
  return read_string([&](char* b, size_t cap, size_t* need) {
    return dkd_session_render(s, edge, b, cap, need);
  });
}

TracePtr run_interactive(const dkd_params& p, std::istream& in, std::ostream& ui) {
  dkd_session* raw = nullptr;
  check(dkd_session_create(&p, "interactive", &raw));
  SessionPtr session(raw);
  const std::string prompt =
      "edge to remove [0.." + std::to_string(p.n - 1) + "] or 'none': ";
  while (!dkd_session_finished(session.get())) {
    ui << "round " << dkd_session_round(session.get()) << "  " << render(session.get(), DKD_NO_EDGE)
       << "  " << dkd_classification_name(dkd_session_classification(session.get())) << '\n';
    int64_t edge = DKD_NO_EDGE;
    for (;;) {
      ui << prompt << std::flush;
      std::string line;
      if (!std::getline(in, line)) raise(kExitUsage, "input ended before the run finished");
      if (dkd_parse_edge_choice(line.c_str(), p.n, &edge) == DKD_OK) break;
      ui << "invalid choice '" << line << "'\n";
    }
    check(dkd_session_step(session.get(), edge));
  }
  ui << "final    " << render(session.get(), DKD_NO_EDGE) << "  "
     << dkd_classification_name(dkd_session_classification(session.get())) << '\n';
  dkd_trace* t = nullptr;
  check(dkd_session_trace(session.get(), &t));
  return TracePtr(t);
}

TracePtr run_with(const dkd_params& p, const Config& c, const std::string& adversary) {
  dkd_adversary adv{DKD_ADV_NONE, c.seed, nullptr, 0};
  std::vector<int64_t> script;
  if (adversary == "none") {
    adv.kind = DKD_ADV_NONE;
  } else if (adversary == "random") {
    adv.kind = DKD_ADV_RANDOM;
  } else if (adversary == "good-chain") {
    adv.kind = DKD_ADV_GOOD_CHAIN;
  } else if (adversary == "scripted") {
    if (c.script.empty()) raise(kExitUsage, "--adversary scripted needs --script");
    script = read_script(c.script, p.n);
    adv.kind = DKD_ADV_SCRIPTED;
    adv.script = script.data();
    adv.script_len = script.size();
  } else if (adversary == "interactive") {
    // Prompts go to stderr when the trace owns stdout.
    const bool trace_on_stdout = c.out.empty() && c.format == "trace";
    return run_interactive(p, std::cin, trace_on_stdout ? std::cerr : std::cout);
  } else {
    raise(kExitUsage, "unknown adversary '" + adversary + "'");
  }
  dkd_trace* t = nullptr;
  check(dkd_run_fsync(&p, &adv, &t));
  return TracePtr(t);
}

int cmd_run(const Config& c) {
  const auto p = to_params(c);
  validate(p);
  auto trace = run_with(p, c, c.adversary);
  const bool on_stdout = emit_trace(trace.get(), c);
  std::ostream& summary = on_stdout ? std::cerr : std::cout;
  const auto outcome = dkd_trace_outcome(trace.get());
  if (outcome.kind == DKD_OUTCOME_TERMINATED) {
    summary << "terminated in " << outcome.rounds << " rounds\n";
    return kExitOk;
  }
  summary << "bound exceeded\n";
  return kExitBound;
}

int cmd_verify(const Config& c) {
  dkd_verify_options opts{c.max_n, c.max_states};
  dkd_report* raw = nullptr;
  const auto s = dkd_verify(c.n, c.k, c.l, &opts, &raw);
  if (s != DKD_OK) raise(exit_code_for(s), dkd_last_error());
  ReportPtr report(raw);
  dkd_report_info info{};
  check(dkd_report_info_get(report.get(), &info));

  std::cout << "n=" << info.n << " k=" << info.k << " l=" << info.l << '\n'
            << "worst_case_rounds " << info.worst_case_rounds << '\n'
            << "best_case_rounds " << info.best_case_rounds << '\n'
            << "bound " << info.bound << '\n'
            << "states_explored " << info.states_explored << '\n'
            << "transitions_checked " << info.transitions_checked << '\n';
  for (size_t i = 0; i < info.violation_count; ++i) {
    std::cout << "violation "
              << read_string([&](char* b, size_t cap, size_t* need) {
                   return dkd_report_violation(report.get(), i, b, cap, need);
                 })
              << '\n';
  }
  if (info.has_counterexample) {
    dkd_trace* t = nullptr;
    check(dkd_report_counterexample(report.get(), &t));
    TracePtr ce(t);
    if (!c.out.empty()) {
      check(dkd_trace_write_file(ce.get(), c.out.c_str()));
      std::cout << "counterexample written to " << c.out << '\n';
    } else {
      std::cout << serialize(ce.get());
    }
  }
  std::cout << (info.certified ? "certified" : "not certified") << '\n';
  return info.certified ? kExitOk : kExitBound;
}

int cmd_ssync_demo(const Config& c) {
  if (c.l < 2) raise(kExitUsage, "ssync-demo needs a multiplicity (l >= 2)");
  const auto p = to_params(c);
  validate(p);
  dkd_trace* raw = nullptr;
  check(dkd_run_ssync_demo(&p, c.rounds, &raw));
  TracePtr trace(raw);
  if (!c.out.empty()) check(dkd_trace_write_file(trace.get(), c.out.c_str()));

  std::vector<uint32_t> initial;
  bool frozen = true;
  const size_t count = dkd_trace_record_count(trace.get());
  for (size_t i = 0; i < count; ++i) {
    dkd_round_info r{};
    check(dkd_trace_record(trace.get(), i, &r));
    size_t len = 0;
    check(dkd_trace_record_occupancy(trace.get(), i, nullptr, 0, &len));
    std::vector<uint32_t> occ(len);
    check(dkd_trace_record_occupancy(trace.get(), i, occ.data(), occ.size(), &len));
    if (i == 0) initial = occ;
    frozen &= (occ == initial);
    std::cout << "round " << r.round << ": activated robot " << r.activated_robot
              << ", intended move " << dkd_move_name(r.activated_move) << ", removed edge ";
    if (r.missing_edge == DKD_NO_EDGE) {
      std::cout << "none";
    } else {
      std::cout << r.missing_edge;
    }
    std::cout << '\n';
  }
  const auto outcome = dkd_trace_outcome(trace.get());
  if (frozen && outcome.kind == DKD_OUTCOME_FROZEN) {
    std::cout << "frozen for " << outcome.rounds << " rounds\n";
    return kExitOk;
  }
  std::cout << "occupancy changed after " << outcome.rounds << " rounds\n";
  return kExitBound;
}

int cmd_sweep(const Config& c) {
  bool all_ok = true;
  std::cout << std::left << std::setw(4) << "n" << std::setw(4) << "k" << std::setw(4) << "l"
            << std::setw(7) << "bound" << std::setw(13) << "adversary" << std::setw(8)
            << "rounds"
            << "outcome\n";
  for (uint32_t n = c.n_min; n <= c.n_max; ++n) {
    for (uint32_t k = c.k_min; k <= c.k_max; ++k) {
      for (uint32_t l = 2; k > 0 && l <= n / k; ++l) {
        Config cell = c;
        cell.n = n;
        cell.k = k;
        cell.l = l;
        const auto p = to_params(cell);
        for (const auto& adv : c.adversaries) {
          if (adv == "interactive" || adv == "scripted") {
            raise(kExitUsage, "sweep supports none, random and good-chain");
          }
          auto trace = run_with(p, cell, adv);
          const auto o = dkd_trace_outcome(trace.get());
          const uint64_t bound = uint64_t{l - 1} * k;
          const bool ok = o.kind == DKD_OUTCOME_TERMINATED && o.rounds <= bound;
          all_ok &= ok;
          std::cout << std::setw(4) << n << std::setw(4) << k << std::setw(4) << l
                    << std::setw(7) << bound << std::setw(13) << adv << std::setw(8) << o.rounds
                    << dkd_outcome_name(o.kind) << '\n';
        }
      }
    }
  }
  return all_ok ? kExitOk : kExitBound;
}

void add_instance(CLI::App* cmd, Config& c) {
  cmd->add_option("--n", c.n, "ring size")->required();
  cmd->add_option("--k", c.k, "target distance")->required();
  cmd->add_option("--l", c.l, "number of robots")->required();
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Distance-k dispersion on a 1-interval connected dynamic ring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dkd_version());

  const std::vector<std::string> adversary_names{"none", "random", "scripted", "good-chain",
                                                 "interactive"};

  auto* run = app.add_subcommand("run", "simulate one fully synchronous run");
  add_instance(run, c);
  run->add_option("--adversary", c.adversary, "edge removal strategy")
      ->check(CLI::IsMember(adversary_names));
  run->add_option("--seed", c.seed, "seed for the random adversary");
  run->add_option("--script", c.script, "script file: one edge index or 'none' per line");
  run->add_option("--round-limit", c.round_limit, "stop after this many rounds (default n)");
  run->add_option("--out", c.out, "write the trace here instead of standard output");
  run->add_option("--format", c.format, "trace: JSON lines trace, summary: one line")
      ->check(CLI::IsMember({"trace", "summary"}));

  auto* verify = app.add_subcommand("verify", "explore every adversary behaviour");
  add_instance(verify, c);
  verify->add_option("--max-n", c.max_n, "largest ring accepted (default 12)");
  verify->add_option("--max-states", c.max_states, "state cap (default 5000000)");
  verify->add_option("--out", c.out, "write a counterexample trace here");

  auto* ssync = app.add_subcommand("ssync-demo", "semi-synchronous run against the hostile scheduler");
  add_instance(ssync, c);
  ssync->add_option("--rounds", c.rounds, "rounds to simulate");
  ssync->add_option("--out", c.out, "write the trace here");

  auto* interactive = app.add_subcommand("interactive", "play the adversary from standard input");
  add_instance(interactive, c);
  interactive->add_option("--round-limit", c.round_limit, "stop after this many rounds");
  interactive->add_option("--out", c.out, "write the trace here");

  auto* sweep = app.add_subcommand("sweep", "run a grid of instances and tabulate rounds");
  sweep->add_option("--n-min", c.n_min);
  sweep->add_option("--n-max", c.n_max);
  sweep->add_option("--k-min", c.k_min);
  sweep->add_option("--k-max", c.k_max);
  sweep->add_option("--adversaries", c.adversaries, "strategies to run per cell")
      ->delimiter(',')
      ->check(CLI::IsMember({"none", "random", "good-chain"}));
  sweep->add_option("--seed", c.seed, "seed for the random adversary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(c);
    if (*verify) return cmd_verify(c);
    if (*ssync) return cmd_ssync_demo(c);
    if (*sweep) return cmd_sweep(c);
    if (*interactive) {
      c.adversary = "interactive";
      c.format = "summary";
      return cmd_run(c);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kExitUsage;
}
