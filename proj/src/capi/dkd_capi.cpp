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

#include "dkd/dkd.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/adversary.hpp"
#include "core/engine.hpp"
#include "core/error.hpp"
#include "core/trace_io.hpp"
#include "core/verifier.hpp"
#include "json.hpp"

struct dkd_trace {
  dkd::Trace trace;
};

struct dkd_session {
  dkd::FsyncRun run;
};

struct dkd_report {
  dkd::VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

dkd_status status_of(dkd::ErrorCode code) {
  switch (code) {
    case dkd::ErrorCode::kInvalidArgument:
    case dkd::ErrorCode::kNoRobots:
    case dkd::ErrorCode::kHeadUndefined: return DKD_INVALID_ARGUMENT;
    case dkd::ErrorCode::kIllegalTraversal: return DKD_ILLEGAL_TRAVERSAL;
    case dkd::ErrorCode::kNotChainClassifiable: return DKD_NOT_CHAIN_CLASSIFIABLE;
    case dkd::ErrorCode::kProtocolCannotAct: return DKD_PROTOCOL_CANNOT_ACT;
    case dkd::ErrorCode::kInapplicable: return DKD_INAPPLICABLE;
    case dkd::ErrorCode::kCapExceeded: return DKD_CAP_EXCEEDED;
    case dkd::ErrorCode::kIo: return DKD_IO;
  }
  return DKD_INTERNAL;
}

dkd_status fail(dkd_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs `body` and converts any exception into a status code.
template <typename F>
dkd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const dkd::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DKD_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DKD_INTERNAL, e.what());
  }
}

dkd_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) {
    return buf ? fail(DKD_BUFFER_TOO_SMALL, "buffer too small") : DKD_OK;
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return DKD_OK;
}

dkd::RunParams to_params(const dkd_params* p) {
  if (!p) throw dkd::Error(dkd::ErrorCode::kInvalidArgument, "params is null");
  dkd::RunParams out;
  out.n = p->n;
  out.k = p->k;
  out.l = p->l;
  out.initial_node = p->initial_node;
  if (p->round_limit != 0) out.round_limit = p->round_limit;
  return out;
}

std::optional<dkd::EdgeIndex> to_edge(int64_t e, uint32_t n) {
  if (e == DKD_NO_EDGE) return std::nullopt;
  if (e < 0 || e >= static_cast<int64_t>(n)) {
    throw dkd::Error(dkd::ErrorCode::kInvalidArgument,
                     "edge " + std::to_string(e) + " is not on a ring of " + std::to_string(n) +
                         " nodes");
  }
  return static_cast<dkd::EdgeIndex>(e);
}

int64_t from_edge(const std::optional<dkd::EdgeIndex>& e) {
  return e ? static_cast<int64_t>(*e) : DKD_NO_EDGE;
}

dkd_move from_move(const dkd::MoveDecision& m) {
  if (m.is_stay()) return DKD_MOVE_STAY;
  return m.direction() == dkd::Direction::kCw ? DKD_MOVE_CW : DKD_MOVE_CCW;
}

template <typename T>
dkd_status need(const T* p, const char* what) {
  return p ? DKD_OK : fail(DKD_INVALID_ARGUMENT, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* dkd_version(void) { return "0.1.0"; }

const char* dkd_status_string(dkd_status status) {
  switch (status) {
    case DKD_OK: return "ok";
    case DKD_INVALID_ARGUMENT: return "invalid argument";
    case DKD_ILLEGAL_TRAVERSAL: return "illegal traversal";
    case DKD_PROTOCOL_CANNOT_ACT: return "protocol cannot act";
    case DKD_INAPPLICABLE: return "inapplicable";
    case DKD_CAP_EXCEEDED: return "cap exceeded";
    case DKD_NOT_CHAIN_CLASSIFIABLE: return "not chain classifiable";
    case DKD_IO: return "i/o error";
    case DKD_BUFFER_TOO_SMALL: return "buffer too small";
    case DKD_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dkd_last_error(void) { return g_last_error.c_str(); }

const char* dkd_classification_name(dkd_classification c) {
  return dkd::tag_name(static_cast<dkd::ConfigTag>(c));
}
const char* dkd_phase_name(dkd_phase p) { return dkd::phase_name(static_cast<dkd::Phase>(p)); }
const char* dkd_outcome_name(dkd_outcome_kind kind) {
  return dkd::outcome_name(static_cast<dkd::OutcomeKind>(kind));
}
const char* dkd_move_name(dkd_move m) {
  switch (m) {
    case DKD_MOVE_STAY: return "stay";
    case DKD_MOVE_CW: return "cw";
    case DKD_MOVE_CCW: return "ccw";
  }
  return "?";
}

dkd_status dkd_validate_params(const dkd_params* params, char* buf, size_t cap,
                               size_t* needed) {
  return guarded([&] {
    const auto warnings = dkd::validate_params(to_params(params));
    std::string joined;
    for (const auto& w : warnings) joined += (joined.empty() ? "" : "\n") + w;
    return copy_out(joined, buf, cap, needed);
  });
}

dkd_status dkd_parse_edge_choice(const char* line, uint32_t n, int64_t* edge) {
  if (auto s = need(line, "line"); s != DKD_OK) return s;
  if (auto s = need(edge, "edge"); s != DKD_OK) return s;
  std::optional<dkd::EdgeIndex> e;
  if (!dkd::parse_edge_choice(line, n, e)) {
    return fail(DKD_INVALID_ARGUMENT, std::string("not an edge index or 'none': ") + line);
  }
  *edge = from_edge(e);
  return DKD_OK;
}

dkd_status dkd_run_fsync(const dkd_params* params, const dkd_adversary* adversary,
                         dkd_trace** out) {
  return guarded([&] {
    if (auto s = need(adversary, "adversary"); s != DKD_OK) return s;
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    const auto p = to_params(params);
    dkd::StrategySpec spec;
    spec.seed = adversary->seed;
    switch (adversary->kind) {
      case DKD_ADV_NONE: spec.kind = dkd::StrategyKind::kNoRemoval; break;
      case DKD_ADV_RANDOM: spec.kind = dkd::StrategyKind::kRandomEdge; break;
      case DKD_ADV_GOOD_CHAIN: spec.kind = dkd::StrategyKind::kTargetGoodChain; break;
      case DKD_ADV_SCRIPTED:
        spec.kind = dkd::StrategyKind::kScripted;
        if (adversary->script_len && !adversary->script) {
          return fail(DKD_INVALID_ARGUMENT, "script is null");
        }
        for (size_t i = 0; i < adversary->script_len; ++i) {
          spec.script.push_back(to_edge(adversary->script[i], p.n));
        }
        break;
      default: return fail(DKD_INVALID_ARGUMENT, "unknown adversary kind");
    }
    auto strategy = dkd::make_strategy(spec, p.k);
    *out = new dkd_trace{dkd::run_fsync(p, *strategy)};
    return DKD_OK;
  });
}

dkd_status dkd_run_ssync_demo(const dkd_params* params, uint64_t rounds, dkd_trace** out) {
  return guarded([&] {
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    *out = new dkd_trace{dkd::run_ssync_demo(to_params(params), rounds)};
    return DKD_OK;
  });
}

dkd_status dkd_trace_parse(const char* text, size_t len, dkd_trace** out) {
  return guarded([&] {
    if (auto s = need(text, "text"); s != DKD_OK) return s;
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    std::istringstream is(std::string(text, len));
    *out = new dkd_trace{dkd::read_trace(is)};
    return DKD_OK;
  });
}

void dkd_trace_free(dkd_trace* trace) { delete trace; }

dkd_outcome dkd_trace_outcome(const dkd_trace* trace) {
  if (!trace) return {DKD_OUTCOME_IN_PROGRESS, 0};
  return {static_cast<dkd_outcome_kind>(trace->trace.outcome.kind), trace->trace.outcome.rounds};
}

size_t dkd_trace_record_count(const dkd_trace* trace) {
  return trace ? trace->trace.records.size() : 0;
}

dkd_status dkd_trace_record(const dkd_trace* trace, size_t index, dkd_round_info* out) {
  if (auto s = need(trace, "trace"); s != DKD_OK) return s;
  if (auto s = need(out, "out"); s != DKD_OK) return s;
  if (index >= trace->trace.records.size()) return fail(DKD_INVALID_ARGUMENT, "record index out of range");
  const auto& r = trace->trace.records[index];
  out->round = r.round;
  out->missing_edge = from_edge(r.missing_edge);
  out->classification = static_cast<dkd_classification>(r.classification);
  out->phase = static_cast<dkd_phase>(r.phase);
  out->activated_robot = 0;
  out->activated_move = DKD_MOVE_STAY;
  if (!r.activated.empty()) {
    out->activated_robot = r.activated.front();
    for (const auto& [id, m] : r.moves) {
      if (id == out->activated_robot) out->activated_move = from_move(m);
    }
  }
  return DKD_OK;
}

dkd_status dkd_trace_record_occupancy(const dkd_trace* trace, size_t index, uint32_t* buf,
                                      size_t cap, size_t* needed) {
  if (auto s = need(trace, "trace"); s != DKD_OK) return s;
  if (index >= trace->trace.records.size()) return fail(DKD_INVALID_ARGUMENT, "record index out of range");
  const auto& occ = trace->trace.records[index].occupancy_before;
  if (needed) *needed = occ.size();
  if (!buf) return DKD_OK;
  if (cap < occ.size()) return fail(DKD_BUFFER_TOO_SMALL, "buffer too small");
  std::copy(occ.begin(), occ.end(), buf);
  return DKD_OK;
}

size_t dkd_trace_warning_count(const dkd_trace* trace) {
  return trace ? trace->trace.warnings.size() : 0;
}

const char* dkd_trace_warning(const dkd_trace* trace, size_t index) {
  if (!trace || index >= trace->trace.warnings.size()) return nullptr;
  return trace->trace.warnings[index].c_str();
}

dkd_status dkd_trace_check(const dkd_trace* trace, size_t* violations, char* buf, size_t cap,
                           size_t* needed) {
  return guarded([&] {
    if (auto s = need(trace, "trace"); s != DKD_OK) return s;
    const auto vs = dkd::check_trace(trace->trace);
    if (violations) *violations = vs.size();
    std::string text;
    for (const auto& v : vs) text += dkd::to_string(v) + "\n";
    return copy_out(text, buf, cap, needed);
  });
}

dkd_status dkd_trace_serialize(const dkd_trace* trace, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (auto s = need(trace, "trace"); s != DKD_OK) return s;
    return copy_out(dkd::serialize_trace(trace->trace), buf, cap, needed);
  });
}

dkd_status dkd_trace_write_file(const dkd_trace* trace, const char* path) {
  return guarded([&] {
    if (auto s = need(trace, "trace"); s != DKD_OK) return s;
    if (auto s = need(path, "path"); s != DKD_OK) return s;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return fail(DKD_IO, std::string("cannot open ") + path + " for writing");
    dkd::write_trace(trace->trace, os);
    os.flush();
    if (!os) return fail(DKD_IO, std::string("write failed: ") + path);
    return DKD_OK;
  });
}

dkd_status dkd_session_create(const dkd_params* params, const char* adversary_name,
                              dkd_session** out) {
  return guarded([&] {
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    *out = new dkd_session{dkd::FsyncRun(to_params(params),
                                         adversary_name ? adversary_name : "interactive")};
    return DKD_OK;
  });
}

void dkd_session_free(dkd_session* session) { delete session; }

int dkd_session_finished(const dkd_session* session) {
  return session ? session->run.finished() : 1;
}

uint64_t dkd_session_round(const dkd_session* session) {
  return session ? session->run.state().round : 0;
}

dkd_classification dkd_session_classification(const dkd_session* session) {
  if (!session) return DKD_CLASS_INVALID;
  const auto& s = session->run.state();
  return static_cast<dkd_classification>(
      dkd::tag_of(dkd::classify(s.occupancy, std::nullopt, session->run.params().k)));
}

dkd_status dkd_session_render(const dkd_session* session, int64_t missing_edge, char* buf,
                              size_t cap, size_t* needed) {
  return guarded([&] {
    if (auto s = need(session, "session"); s != DKD_OK) return s;
    const auto& st = session->run.state();
    return copy_out(dkd::render_ring(st.occupancy, to_edge(missing_edge, st.n())), buf, cap,
                    needed);
  });
}

dkd_status dkd_session_step(dkd_session* session, int64_t missing_edge) {
  return guarded([&] {
    if (auto s = need(session, "session"); s != DKD_OK) return s;
    if (session->run.finished()) return fail(DKD_INAPPLICABLE, "run already finished");
    session->run.step(to_edge(missing_edge, session->run.state().n()));
    return DKD_OK;
  });
}

dkd_status dkd_session_trace(const dkd_session* session, dkd_trace** out) {
  return guarded([&] {
    if (auto s = need(session, "session"); s != DKD_OK) return s;
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    *out = new dkd_trace{session->run.trace()};
    return DKD_OK;
  });
}

dkd_status dkd_verify(uint32_t n, uint32_t k, uint32_t l, const dkd_verify_options* options,
                      dkd_report** out) {
  return guarded([&] {
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    dkd::VerifyOptions opts;
    if (options && options->max_n) opts.max_n = options->max_n;
    if (options && options->max_states) opts.max_states = options->max_states;
    *out = new dkd_report{dkd::exhaustive_verify(n, k, l, opts)};
    return DKD_OK;
  });
}

void dkd_report_free(dkd_report* report) { delete report; }

dkd_status dkd_report_info_get(const dkd_report* report, dkd_report_info* out) {
  if (auto s = need(report, "report"); s != DKD_OK) return s;
  if (auto s = need(out, "out"); s != DKD_OK) return s;
  const auto& r = report->report;
  *out = dkd_report_info{r.n,
                         r.k,
                         r.l,
                         r.states_explored,
                         r.transitions_checked,
                         r.worst_case_rounds,
                         r.best_case_rounds,
                         r.bound,
                         r.certified ? 1 : 0,
                         r.violations.size(),
                         r.counterexample.has_value() ? 1 : 0};
  return DKD_OK;
}

dkd_status dkd_report_violation(const dkd_report* report, size_t index, char* buf, size_t cap,
                                size_t* needed) {
  if (auto s = need(report, "report"); s != DKD_OK) return s;
  if (index >= report->report.violations.size()) {
    return fail(DKD_INVALID_ARGUMENT, "violation index out of range");
  }
  return copy_out(dkd::to_string(report->report.violations[index]), buf, cap, needed);
}

dkd_status dkd_report_counterexample(const dkd_report* report, dkd_trace** out) {
  return guarded([&] {
    if (auto s = need(report, "report"); s != DKD_OK) return s;
    if (auto s = need(out, "out"); s != DKD_OK) return s;
    if (!report->report.counterexample) return fail(DKD_INAPPLICABLE, "no counterexample");
    *out = new dkd_trace{*report->report.counterexample};
    return DKD_OK;
  });
}

dkd_status dkd_report_serialize(const dkd_report* report, char* buf, size_t cap,
                                size_t* needed) {
  return guarded([&] {
    if (auto s = need(report, "report"); s != DKD_OK) return s;
    const auto& r = report->report;
    nlohmann::ordered_json j;
    j["report"] = "dkd";
    j["params"] = {{"n", r.n}, {"k", r.k}, {"l", r.l}};
    j["certified"] = r.certified;
    j["worst_case_rounds"] = r.worst_case_rounds;
    j["best_case_rounds"] = r.best_case_rounds;
    j["bound"] = r.bound;
    j["states_explored"] = r.states_explored;
    j["transitions_checked"] = r.transitions_checked;
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) {
      vs.push_back({{"round", v.round}, {"check", dkd::check_id_name(v.check)}, {"detail", v.detail}});
    }
    j["violations"] = std::move(vs);
    return copy_out(j.dump(), buf, cap, needed);
  });
}

}  // extern "C"
