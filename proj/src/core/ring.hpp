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

#ifndef DKD_CORE_RING_HPP_
#define DKD_CORE_RING_HPP_

// Ring topology, occupancy bookkeeping and the arc/distance arithmetic shared
// by every other module.
//
// Nodes are numbered 0..n-1 ascending clockwise. Edge i joins node i and node
// (i + 1) mod n. At most one edge is missing in any round.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dkd {

using Node = std::uint32_t;
using EdgeIndex = std::uint32_t;
using RobotId = std::uint32_t;

enum class Direction : std::uint8_t { kCw, kCcw };

constexpr Direction opposite(Direction d) {
  return d == Direction::kCw ? Direction::kCcw : Direction::kCw;
}

const char* direction_name(Direction d);

/// Neighbour of `node` one hop in direction `d`.
Node step(std::uint32_t n, Node node, Direction d);

/// The edge crossed when leaving `node` in direction `d`.
EdgeIndex edge_towards(std::uint32_t n, Node node, Direction d);

struct RingTopology {
  std::uint32_t n = 0;
  std::optional<EdgeIndex> missing_edge;

  RingTopology() = default;
  explicit RingTopology(std::uint32_t node_count,
                        std::optional<EdgeIndex> missing = std::nullopt);

  bool edge_present(EdgeIndex e) const { return missing_edge != e; }

  bool operator==(const RingTopology&) const = default;
};

/// Per-node robot counts. Node class: 0 null, 1 singleton, >=2 multiplicity.
class Occupancy {
 public:
  Occupancy() = default;
  explicit Occupancy(std::vector<std::uint32_t> counts);

  std::uint32_t size() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint32_t operator[](Node v) const { return counts_[v]; }
  std::span<const std::uint32_t> counts() const { return counts_; }

  std::uint32_t total() const;
  bool occupied(Node v) const { return counts_[v] > 0; }
  bool is_multiplicity(Node v) const { return counts_[v] >= 2; }

  std::vector<Node> occupied_nodes() const;
  std::vector<Node> multiplicity_nodes() const;
  std::uint32_t singleton_count() const;
  bool dispersed() const;

  bool operator==(const Occupancy&) const = default;

 private:
  std::vector<std::uint32_t> counts_;
};

/// Robot id -> node. Ordered so that iteration is deterministic.
using RobotRegistry = std::map<RobotId, Node>;

Occupancy aggregate(const RobotRegistry& registry, std::uint32_t n);

struct WorldState {
  std::uint64_t round = 0;
  RingTopology topology;
  Occupancy occupancy;
  RobotRegistry registry;
  bool halted = false;

  std::uint32_t n() const { return topology.n; }

  bool operator==(const WorldState&) const = default;
};

/// All `l` robots (ids 1..l) on `root`.
WorldState make_rooted_state(std::uint32_t n, std::uint32_t l, Node root = 0);

/// Robots placed per `counts`, ids assigned 1.. in ascending node order.
WorldState make_state(const Occupancy& occupancy);

/// Throws kInvalidArgument if registry and occupancy disagree.
void validate_state(const WorldState& state);

/// Edges traversed from `from` to `to` walking in `dir`.
std::uint32_t distance(std::uint32_t n, Node from, Node to, Direction dir);

/// Inclusive node sequence from `start` to `end` walking in `dir`.
std::vector<Node> arc_nodes(std::uint32_t n, Node start, Node end, Direction dir);

struct OccupiedPair {
  Node from;
  Node to;
  std::uint32_t distance;

  bool operator==(const OccupiedPair&) const = default;
};

/// Cyclic consecutive occupied pairs in `dir` order, starting from the lowest
/// occupied node. A single occupied node yields one self-pair at distance n.
std::vector<OccupiedPair> consecutive_occupied_pairs(const Occupancy& occ,
                                                     Direction dir);

/// Next occupied node strictly after `from` in `dir`, with its distance. When
/// `from` is the only occupied node this is `from` itself at distance n.
OccupiedPair next_occupied(const Occupancy& occ, Node from, Direction dir);

bool edge_in_arc(std::uint32_t n, EdgeIndex edge, Node start, Node end,
                 Direction dir);

class MoveDecision {
 public:
  static constexpr MoveDecision stay() { return MoveDecision(); }
  static constexpr MoveDecision move(Direction d) { return MoveDecision(d); }

  bool is_stay() const { return !dir_.has_value(); }
  Direction direction() const { return *dir_; }
  /// "stay", "cw" or "ccw".
  const char* name() const;

  bool operator==(const MoveDecision&) const = default;

 private:
  constexpr MoveDecision() = default;
  constexpr explicit MoveDecision(Direction d) : dir_(d) {}

  std::optional<Direction> dir_;
};

using MoveMap = std::map<RobotId, MoveDecision>;

/// Displaces every moving robot one hop. Robots absent from `moves` stay.
/// A move across the missing edge throws kIllegalTraversal.
WorldState apply_moves(const WorldState& state, const MoveMap& moves);

}  // namespace dkd

#endif  // DKD_CORE_RING_HPP_
