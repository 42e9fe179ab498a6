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

#ifndef DKD_CORE_VERIFIER_HPP_
#define DKD_CORE_VERIFIER_HPP_

// Per-round invariant checks on transitions and traces, and a bounded
// exhaustive search over every adversary behaviour.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/engine.hpp"
#include "core/ring.hpp"

namespace dkd {

enum class CheckId : std::uint8_t {
  kL3Singleton,           // a Spread round adds exactly one singleton node
  kL4TwoBlocks,           // every non-chain, non-target state has two blocks
  kL5HeadGapOne,          // chain -> blocks: head gap 1, every other gap k
  kLGapIncrement,         // blocks -> blocks: head gap grows by exactly 1
  kL6ReconstructBound,    // a run of blocks rounds lasts at most k-1
  kT5RoundBound,          // termination within (l-1)k rounds
  kTargetConditions,      // final state: dispersed, gaps >= k, some gap == k
  kConservation,          // robot count and registry/occupancy agreement
  kClassificationOracle,  // classifier agrees with the definition checker
  kProtocolFault,         // illegal traversal or a decision error
};

const char* check_id_name(CheckId id);

struct Violation {
  std::uint64_t round = 0;
  CheckId check = CheckId::kProtocolFault;
  std::string detail;
};

std::string to_string(const Violation& v);

/// A world state together with its classification under the state's missing
/// edge.
struct Snapshot {
  WorldState state;
  ClassifiedConfiguration classification;
};

Snapshot snapshot(const WorldState& state, std::uint32_t k);

/// `prev` is the start-of-round state with the round's missing edge
/// installed, `next` the state one engine step later. The definition-oracle
/// comparison is made on `prev`.
std::vector<Violation> check_transition(const Snapshot& prev, const Snapshot& next,
                                        std::uint32_t k);

/// Every maximal run of consecutive `blocks` records must be at most k-1 long.
std::vector<Violation> check_reconstruct_span(const Trace& trace, std::uint32_t k);

/// Dispersed, every pair of occupied nodes at least k apart and some pair
/// exactly k apart. Written against pairwise ring distance, not gap scans.
bool target_conditions_hold(const Occupancy& occ, std::uint32_t k);

/// Replays an FSYNC trace from its rooted start, re-derives every decision,
/// and runs all per-round and end-of-run checks.
std::vector<Violation> check_trace(const Trace& trace);

struct CanonicalKey {
  std::vector<std::uint32_t> counts;
  std::optional<EdgeIndex> missing_edge;

  auto operator<=>(const CanonicalKey&) const = default;
  bool operator==(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& key) const noexcept;
};

struct CanonicalForm {
  CanonicalKey key;
  /// key.counts[i] == occupancy[(i + offset) % n].
  std::uint32_t offset = 0;
};

/// Lexicographically least rotation of (counts, missing edge). Robot ids are
/// dropped; only rotations are quotiented out, never reflections.
CanonicalForm canonical_rotation(const Occupancy& occ, std::optional<EdgeIndex> missing);
CanonicalKey canonicalize(const Occupancy& occ, std::optional<EdgeIndex> missing);

struct VerifyOptions {
  std::uint32_t max_n = 12;
  std::uint64_t max_states = 5'000'000;
  bool collect_states = false;
  /// Round bound to certify against; (l-1)k when unset. A tighter value makes
  /// the search fail with a concrete counterexample.
  std::optional<std::uint64_t> claimed_bound;
};

struct VerificationReport {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t l = 0;
  std::uint64_t states_explored = 0;      // distinct canonical occupancies
  std::uint64_t transitions_checked = 0;  // (state, adversary choice) pairs
  std::uint64_t worst_case_rounds = 0;
  std::uint64_t best_case_rounds = 0;
  std::uint64_t bound = 0;
  bool certified = false;
  std::vector<Violation> violations;
  std::optional<Trace> counterexample;
  std::vector<CanonicalKey> reached_states;  // only with collect_states
};

/**
 * Explores every adversary behaviour from the rooted start, one round per
 * layer. Layer t holds the canonical states reachable in exactly t rounds, so
 * the deepest layer that still yields a target is the exact worst case. Each
 * (state, edge-or-none) pair is stepped through the engine and checked with
 * check_transition. Stops at the first violation and rebuilds a concrete
 * counterexample trace by walking parent pointers.
 *
 * Throws kCapExceeded when n exceeds options.max_n or the state count exceeds
 * options.max_states, and kInvalidArgument unless k >= 2 and
 * 2 <= l <= floor(n/k).
 */
VerificationReport exhaustive_verify(std::uint32_t n, std::uint32_t k, std::uint32_t l,
                                     const VerifyOptions& options = {});

}  // namespace dkd

#endif  // DKD_CORE_VERIFIER_HPP_
