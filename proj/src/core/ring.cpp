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

#include "core/ring.hpp"

#include <numeric>

#include "core/error.hpp"

namespace dkd {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNoRobots: return "no robots";
    case ErrorCode::kIllegalTraversal: return "illegal traversal";
    case ErrorCode::kNotChainClassifiable: return "not chain-classifiable";
    case ErrorCode::kHeadUndefined: return "head undefined";
    case ErrorCode::kProtocolCannotAct: return "protocol cannot act";
    case ErrorCode::kInapplicable: return "inapplicable";
    case ErrorCode::kCapExceeded: return "instance too large";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

const char* direction_name(Direction d) {
  return d == Direction::kCw ? "cw" : "ccw";
}

Node step(std::uint32_t n, Node node, Direction d) {
  return d == Direction::kCw ? (node + 1) % n : (node + n - 1) % n;
}

EdgeIndex edge_towards(std::uint32_t n, Node node, Direction d) {
  return d == Direction::kCw ? node : (node + n - 1) % n;
}

RingTopology::RingTopology(std::uint32_t node_count,
                           std::optional<EdgeIndex> missing)
    : n(node_count), missing_edge(missing) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ring needs at least 2 nodes");
  }
  if (missing_edge && *missing_edge >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge " + std::to_string(*missing_edge) + " does not exist on a " +
                    std::to_string(n) + "-node ring");
  }
}

Occupancy::Occupancy(std::vector<std::uint32_t> counts)
    : counts_(std::move(counts)) {}

std::uint32_t Occupancy::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint32_t{0});
}

std::vector<Node> Occupancy::occupied_nodes() const {
  std::vector<Node> out;
  for (Node v = 0; v < size(); ++v) {
    if (counts_[v] > 0) out.push_back(v);
  }
  return out;
}

std::vector<Node> Occupancy::multiplicity_nodes() const {
  std::vector<Node> out;
  for (Node v = 0; v < size(); ++v) {
    if (counts_[v] >= 2) out.push_back(v);
  }
  return out;
}

std::uint32_t Occupancy::singleton_count() const {
  std::uint32_t c = 0;
  for (auto x : counts_) c += (x == 1);
  return c;
}

bool Occupancy::dispersed() const {
  for (auto x : counts_) {
    if (x >= 2) return false;
  }
  return true;
}

Occupancy aggregate(const RobotRegistry& registry, std::uint32_t n) {
  std::vector<std::uint32_t> counts(n, 0);
  for (const auto& [id, node] : registry) {
    if (node >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "robot " + std::to_string(id) + " is off the ring");
    }
    ++counts[node];
  }
  return Occupancy(std::move(counts));
}

WorldState make_rooted_state(std::uint32_t n, std::uint32_t l, Node root) {
  if (root >= n) {
    throw Error(ErrorCode::kInvalidArgument, "root node outside the ring");
  }
  WorldState s;
  s.topology = RingTopology(n);
  for (RobotId id = 1; id <= l; ++id) s.registry.emplace(id, root);
  s.occupancy = aggregate(s.registry, n);
  return s;
}

WorldState make_state(const Occupancy& occupancy) {
  WorldState s;
  s.topology = RingTopology(occupancy.size());
  RobotId next = 1;
  for (Node v = 0; v < occupancy.size(); ++v) {
    for (std::uint32_t i = 0; i < occupancy[v]; ++i) s.registry.emplace(next++, v);
  }
  s.occupancy = occupancy;
  return s;
}

void validate_state(const WorldState& state) {
  if (state.occupancy.size() != state.n()) {
    throw Error(ErrorCode::kInvalidArgument, "occupancy length differs from n");
  }
  for (const auto& [id, node] : state.registry) {
    if (id == 0) {
      throw Error(ErrorCode::kInvalidArgument, "robot ids must be positive");
    }
  }
  if (aggregate(state.registry, state.n()) != state.occupancy) {
    throw Error(ErrorCode::kInvalidArgument,
                "robot registry disagrees with occupancy");
  }
}

std::uint32_t distance(std::uint32_t n, Node from, Node to, Direction dir) {
  return dir == Direction::kCw ? (to + n - from) % n : (from + n - to) % n;
}

std::vector<Node> arc_nodes(std::uint32_t n, Node start, Node end,
                            Direction dir) {
  std::vector<Node> out;
  out.reserve(distance(n, start, end, dir) + 1);
  for (Node v = start;; v = step(n, v, dir)) {
    out.push_back(v);
    if (v == end) break;
  }
  return out;
}

OccupiedPair next_occupied(const Occupancy& occ, Node from, Direction dir) {
  const auto n = occ.size();
  Node v = from;
  for (std::uint32_t d = 1; d <= n; ++d) {
    v = step(n, v, dir);
    if (occ.occupied(v)) return {from, v, d};
  }
  throw Error(ErrorCode::kNoRobots, "no robots");
}

std::vector<OccupiedPair> consecutive_occupied_pairs(const Occupancy& occ,
                                                     Direction dir) {
  const auto nodes = occ.occupied_nodes();
  if (nodes.empty()) throw Error(ErrorCode::kNoRobots, "no robots");
  std::vector<OccupiedPair> out;
  out.reserve(nodes.size());
  Node v = nodes.front();
  do {
    out.push_back(next_occupied(occ, v, dir));
    v = out.back().to;
  } while (v != nodes.front());
  return out;
}

bool edge_in_arc(std::uint32_t n, EdgeIndex edge, Node start, Node end,
                 Direction dir) {
  // Walking the arc, each hop crosses exactly one edge.
  for (Node v = start; v != end; v = step(n, v, dir)) {
    if (edge_towards(n, v, dir) == edge) return true;
  }
  return false;
}

const char* MoveDecision::name() const {
  return is_stay() ? "stay" : direction_name(*dir_);
}

WorldState apply_moves(const WorldState& state, const MoveMap& moves) {
  const auto n = state.n();
  WorldState next = state;
  next.round = state.round + 1;
  for (const auto& [id, decision] : moves) {
    auto it = next.registry.find(id);
    if (it == next.registry.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "move for unknown robot " + std::to_string(id));
    }
    if (decision.is_stay()) continue;
    const Node from = state.registry.at(id);
    const EdgeIndex e = edge_towards(n, from, decision.direction());
    if (!state.topology.edge_present(e)) {
      throw Error(ErrorCode::kIllegalTraversal,
                  "illegal traversal: robot " + std::to_string(id) + " at node " +
                      std::to_string(from) + " moved " +
                      direction_name(decision.direction()) +
                      " across missing edge " + std::to_string(e));
    }
    it->second = step(n, from, decision.direction());
  }
  next.occupancy = aggregate(next.registry, n);
  return next;
}

}  // namespace dkd
