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

#ifndef DKD_CORE_ENGINE_HPP_
#define DKD_CORE_ENGINE_HPP_

// Round executors for the fully synchronous and semi-synchronous schedulers.
//
// One FSYNC round: the adversary installs its edge, every robot looks and
// computes on the same snapshot, then all moves are applied at once.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/adversary.hpp"
#include "core/classifier.hpp"
#include "core/ring.hpp"

namespace dkd {

struct RunParams {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t l = 0;
  Node initial_node = 0;
  std::optional<std::uint64_t> round_limit;  // defaults to n

  std::uint64_t effective_round_limit() const { return round_limit.value_or(n); }
  /// (l - 1) * k.
  std::uint64_t round_bound() const { return std::uint64_t{l > 0 ? l - 1 : 0} * k; }

  bool operator==(const RunParams&) const = default;
};

/// Throws kInvalidArgument on unusable parameters; returns warnings for
/// parameters outside the supported range (k >= 2, l >= 2).
std::vector<std::string> validate_params(const RunParams& params);

enum class Phase : std::uint8_t { kSpread, kReconstruct, kHalt };
const char* phase_name(Phase p);

struct RoundRecord {
  std::uint64_t round = 0;
  std::optional<EdgeIndex> missing_edge;
  ConfigTag classification = ConfigTag::kInvalid;
  std::vector<std::uint32_t> occupancy_before;
  std::vector<std::pair<RobotId, MoveDecision>> moves;
  Phase phase = Phase::kHalt;
  std::vector<RobotId> activated;  // SSYNC only

  bool operator==(const RoundRecord&) const = default;
};

enum class OutcomeKind : std::uint8_t {
  kTerminated,
  kBoundExceeded,
  kFrozen,
  kEscaped,     // SSYNC run in which a robot left the multiplicity
  kInProgress,  // snapshot of an unfinished run
};
const char* outcome_name(OutcomeKind kind);

struct Outcome {
  OutcomeKind kind = OutcomeKind::kInProgress;
  std::uint64_t rounds = 0;

  bool operator==(const Outcome&) const = default;
};

enum class Scheduler : std::uint8_t { kFsync, kSsync };

struct Trace {
  RunParams params;
  Scheduler scheduler = Scheduler::kFsync;
  std::string adversary;
  std::vector<std::string> warnings;
  std::vector<RoundRecord> records;
  Outcome outcome;

  bool operator==(const Trace&) const = default;
};

struct StepResult {
  WorldState next;
  RoundRecord record;
};

/// Protocol decision of every robot in `state`, keyed by id.
MoveMap decide_all(const WorldState& state, std::uint32_t k);

Phase phase_for(ConfigTag tag);

/// One FSYNC round with `missing` installed. Throws kProtocolCannotAct or
/// kIllegalTraversal when the protocol misbehaves.
StepResult step_fsync(const WorldState& state, std::optional<EdgeIndex> missing,
                      std::uint32_t k);

/// One SSYNC round under the hostile adversary. Activated robots whose edge
/// was removed stay put.
StepResult step_ssync(const WorldState& state, const HostileSsync& adversary,
                      std::uint32_t k);

/**
 * An FSYNC run driven one round at a time; used by run_fsync and by callers
 * that pick edges themselves (interactive play, the C API session).
 */
class FsyncRun {
 public:
  FsyncRun(const RunParams& params, std::string adversary_description);

  bool finished() const;
  void step(std::optional<EdgeIndex> missing);

  const WorldState& state() const { return state_; }
  const RunParams& params() const { return trace_.params; }
  Outcome outcome() const;
  Trace trace() const;

 private:
  WorldState state_;
  Trace trace_;
};

/// Runs from the rooted start until target or the round limit.
Trace run_fsync(const RunParams& params, FsyncStrategy& strategy);

/// Runs `rounds` SSYNC rounds under HostileSsync. Requires l >= 2.
Trace run_ssync_demo(const RunParams& params, std::uint64_t rounds);

/// ASCII strip of the ring: '.' null, 'o' singleton, 2-9 multiplicity count
/// (capped at 9); between cells '-' for a present edge and 'x' for the missing
/// one. The trailing edge character is edge n-1 back to node 0.
std::string render_ring(const Occupancy& occ, std::optional<EdgeIndex> missing);

}  // namespace dkd

#endif  // DKD_CORE_ENGINE_HPP_
