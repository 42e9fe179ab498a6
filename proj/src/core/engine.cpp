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

#include "core/engine.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/protocol.hpp"

namespace dkd {

namespace {

std::vector<std::uint32_t> counts_of(const Occupancy& occ) {
  return {occ.counts().begin(), occ.counts().end()};
}

}  // namespace

std::vector<std::string> validate_params(const RunParams& p) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (p.n < 2) fail("n must be at least 2");
  if (p.k < 1) fail("k must be at least 1");
  if (p.l < 1) fail("l must be at least 1");
  if (p.l > p.n / p.k) {
    fail("l=" + std::to_string(p.l) + " exceeds floor(n/k)=" + std::to_string(p.n / p.k));
  }
  if (p.initial_node >= p.n) fail("initial node outside the ring");
  if (p.effective_round_limit() < p.round_bound()) {
    fail("round limit " + std::to_string(p.effective_round_limit()) +
         " is below (l-1)k=" + std::to_string(p.round_bound()));
  }
  std::vector<std::string> warnings;
  if (p.k == 1) warnings.emplace_back("k=1 is outside the supported range; no correctness guarantee");
  if (p.l == 1) warnings.emplace_back("l=1: a lone robot is already dispersed; the run ends at round 0");
  return warnings;
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kSpread: return "spread";
    case Phase::kReconstruct: return "reconstruct";
    case Phase::kHalt: return "halt";
  }
  return "halt";
}

const char* outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kTerminated: return "terminated";
    case OutcomeKind::kBoundExceeded: return "bound_exceeded";
    case OutcomeKind::kFrozen: return "frozen";
    case OutcomeKind::kEscaped: return "escaped";
    case OutcomeKind::kInProgress: return "in_progress";
  }
  return "in_progress";
}

Phase phase_for(ConfigTag tag) {
  switch (tag) {
    case ConfigTag::kChain: return Phase::kSpread;
    case ConfigTag::kBlocks: return Phase::kReconstruct;
    default: return Phase::kHalt;
  }
}

MoveMap decide_all(const WorldState& state, std::uint32_t k) {
  MoveMap moves;
  for (const auto& [id, node] : state.registry) {
    moves.emplace(id, compute_move(build_view(state, id, k)));
  }
  return moves;
}

StepResult step_fsync(const WorldState& state, std::optional<EdgeIndex> missing,
                      std::uint32_t k) {
  WorldState cur = state;
  cur.topology = RingTopology(state.n(), missing);

  const auto verdict = classify(cur.occupancy, missing, k);
  if (tag_of(verdict) == ConfigTag::kInvalid) {
    throw Error(ErrorCode::kProtocolCannotAct,
                "protocol cannot act at round " + std::to_string(cur.round) + ": " +
                    describe(verdict));
  }

  RoundRecord rec;
  rec.round = cur.round;
  rec.missing_edge = missing;
  rec.classification = tag_of(verdict);
  rec.occupancy_before = counts_of(cur.occupancy);
  rec.phase = phase_for(rec.classification);

  const MoveMap moves = decide_all(cur, k);
  rec.moves.assign(moves.begin(), moves.end());

  WorldState next = apply_moves(cur, moves);
  next.halted = is_target(next.occupancy, k);
  return {std::move(next), std::move(rec)};
}

StepResult step_ssync(const WorldState& state, const HostileSsync& adversary,
                      std::uint32_t k) {
  WorldState cur = state;
  cur.topology = RingTopology(state.n());
  const MoveMap pending = decide_all(cur, k);
  const auto decision = adversary.choose_ssync(cur.round, cur, pending);
  cur.topology = RingTopology(state.n(), decision.missing_edge);

  RoundRecord rec;
  rec.round = cur.round;
  rec.missing_edge = decision.missing_edge;
  rec.classification = tag_of(classify(cur.occupancy, decision.missing_edge, k));
  rec.occupancy_before = counts_of(cur.occupancy);
  rec.phase = phase_for(rec.classification);
  rec.activated = decision.activation_set;

  MoveMap moves;
  for (RobotId id : decision.activation_set) {
    const auto d = pending.at(id);
    rec.moves.emplace_back(id, d);
    if (d.is_stay()) continue;
    // Robots cannot cross a missing edge; the move is simply lost.
    const auto e = edge_towards(state.n(), cur.registry.at(id), d.direction());
    if (cur.topology.edge_present(e)) moves.emplace(id, d);
  }
  WorldState next = apply_moves(cur, moves);
  next.halted = is_target(next.occupancy, k);
  return {std::move(next), std::move(rec)};
}

FsyncRun::FsyncRun(const RunParams& params, std::string adversary_description) {
  trace_.params = params;
  trace_.warnings = validate_params(params);
  trace_.scheduler = Scheduler::kFsync;
  trace_.adversary = std::move(adversary_description);
  state_ = make_rooted_state(params.n, params.l, params.initial_node);
  state_.halted = is_target(state_.occupancy, params.k);
}

bool FsyncRun::finished() const {
  return state_.halted || state_.round >= trace_.params.effective_round_limit();
}

void FsyncRun::step(std::optional<EdgeIndex> missing) {
  if (finished()) throw Error(ErrorCode::kInvalidArgument, "run already finished");
  auto result = step_fsync(state_, missing, trace_.params.k);
  trace_.records.push_back(std::move(result.record));
  state_ = std::move(result.next);
}

Outcome FsyncRun::outcome() const {
  if (state_.halted) return {OutcomeKind::kTerminated, state_.round};
  if (finished()) return {OutcomeKind::kBoundExceeded, state_.round};
  return {OutcomeKind::kInProgress, state_.round};
}

Trace FsyncRun::trace() const {
  Trace t = trace_;
  t.outcome = outcome();
  return t;
}

Trace run_fsync(const RunParams& params, FsyncStrategy& strategy) {
  FsyncRun run(params, strategy.describe());
  while (!run.finished()) {
    run.step(strategy.choose_fsync(run.state().round, run.state()));
  }
  return run.trace();
}

Trace run_ssync_demo(const RunParams& params, std::uint64_t rounds) {
  Trace trace;
  trace.params = params;
  trace.warnings = validate_params(params);
  if (params.l < 2) {
    throw Error(ErrorCode::kInvalidArgument, "demo requires multiplicity (l >= 2)");
  }
  trace.scheduler = Scheduler::kSsync;
  const HostileSsync adversary;
  trace.adversary = adversary.describe();

  WorldState state = make_rooted_state(params.n, params.l, params.initial_node);
  const Occupancy initial = state.occupancy;
  std::optional<std::uint64_t> escaped_at;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    auto result = step_ssync(state, adversary, params.k);
    trace.records.push_back(std::move(result.record));
    state = std::move(result.next);
    if (state.occupancy != initial) {
      escaped_at = state.round;
      break;
    }
  }
  trace.outcome = escaped_at ? Outcome{OutcomeKind::kEscaped, *escaped_at}
                             : Outcome{OutcomeKind::kFrozen, rounds};
  return trace;
}

std::string render_ring(const Occupancy& occ, std::optional<EdgeIndex> missing) {
  std::string out;
  out.reserve(2 * occ.size());
  for (Node v = 0; v < occ.size(); ++v) {
    const auto c = occ[v];
    out += c == 0 ? '.' : c == 1 ? 'o' : static_cast<char>('0' + std::min(c, 9u));
    out += missing == v ? 'x' : '-';
  }
  return out;
}

}  // namespace dkd
