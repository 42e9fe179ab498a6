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

#include "core/protocol.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace dkd {

namespace {

bool contains(const std::vector<Node>& nodes, Node v) {
  return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
}

ClassifiedConfiguration classify_view(const RobotView& view) {
  return classify(saturated_occupancy(view), view.missing_edge, view.k);
}

// Direction the Spread step pushes in.
Direction spread_direction(const RobotView& view, const ChainConfig& cc) {
  const bool cw_good = cc.cw_chain.good;
  const bool ccw_good = cc.ccw_chain.good;
  if (cw_good && ccw_good) return Direction::kCcw;
  if (cw_good != ccw_good) return cw_good ? Direction::kCw : Direction::kCcw;

  // Both bad: the missing edge is incident to the multiplicity.
  const Node m = cc.cw_chain.occupied_nodes.front();
  if (view.missing_edge == edge_towards(view.n, m, Direction::kCw)) return Direction::kCcw;
  if (view.missing_edge == edge_towards(view.n, m, Direction::kCcw)) return Direction::kCw;
  throw Error(ErrorCode::kProtocolCannotAct,
              "protocol cannot act: both chains bad but missing edge is not "
              "incident to the multiplicity");
}

}  // namespace

Level level_of(std::uint32_t count) {
  return count == 0 ? Level::kNull : count == 1 ? Level::kOne : Level::kMany;
}

RobotView build_view(const WorldState& state, RobotId robot, std::uint32_t k) {
  const auto it = state.registry.find(robot);
  if (it == state.registry.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown robot " + std::to_string(robot));
  }
  RobotView view;
  view.own_id = robot;
  view.own_node = it->second;
  view.k = k;
  view.n = state.n();
  view.local_count = state.occupancy[view.own_node];
  view.missing_edge = state.topology.missing_edge;
  view.global_levels.reserve(view.n);
  for (Node v = 0; v < view.n; ++v) view.global_levels.push_back(level_of(state.occupancy[v]));

  // The registry is ordered by id, so the first co-located robot is the least.
  view.is_least_id_here = true;
  for (const auto& [id, node] : state.registry) {
    if (node == view.own_node) {
      view.is_least_id_here = (id == robot);
      break;
    }
  }
  return view;
}

Occupancy saturated_occupancy(const RobotView& view) {
  std::vector<std::uint32_t> counts;
  counts.reserve(view.global_levels.size());
  for (Level lv : view.global_levels) counts.push_back(static_cast<std::uint32_t>(lv));
  return Occupancy(std::move(counts));
}

MoveDecision compute_move(const RobotView& view) {
  const auto verdict = classify_view(view);
  switch (tag_of(verdict)) {
    case ConfigTag::kChain: return spread_decision(view);
    case ConfigTag::kBlocks: return reconstruct_decision(view);
    case ConfigTag::kTarget: return MoveDecision::stay();
    case ConfigTag::kInvalid: break;
  }
  throw Error(ErrorCode::kProtocolCannotAct,
              "protocol cannot act: " + describe(verdict));
}

MoveDecision spread_decision(const RobotView& view) {
  const auto verdict = classify_view(view);
  const auto* cc = std::get_if<ChainConfig>(&verdict);
  if (!cc) {
    throw Error(ErrorCode::kInvalidArgument,
                "spread needs a chain configuration, got " + describe(verdict));
  }
  const Direction d = spread_direction(view, *cc);
  const Node m = cc->cw_chain.occupied_nodes.front();

  if (view.own_node == m) {
    return view.is_least_id_here ? MoveDecision::move(d) : MoveDecision::stay();
  }
  const Chain& chosen = d == Direction::kCw ? cc->cw_chain : cc->ccw_chain;
  return contains(chosen.occupied_nodes, view.own_node) ? MoveDecision::move(d)
                                                        : MoveDecision::stay();
}

MoveDecision reconstruct_decision(const RobotView& view) {
  const auto verdict = classify_view(view);
  const auto* tb = std::get_if<TwoBlocks>(&verdict);
  if (!tb) {
    throw Error(ErrorCode::kInvalidArgument,
                "reconstruct needs two blocks, got " + describe(verdict));
  }
  const Block& chain_block = tb->chain_block;
  const Block& non_chain_block = tb->non_chain_block;
  const Direction d = chain_block.direction;
  // A missing edge in the non-chain block or in the free gap blocks nothing
  // the chain block is about to do.
  const bool chain_block_cut = chain_block.contains_missing_edge;

  if (view.own_node == chain_block.head) {
    return chain_block_cut ? MoveDecision::stay() : MoveDecision::move(d);
  }
  if (!chain_block_cut) {
    return contains(chain_block.occupied_nodes, view.own_node) ? MoveDecision::move(d)
                                                               : MoveDecision::stay();
  }
  return contains(non_chain_block.occupied_nodes, view.own_node)
             ? MoveDecision::move(opposite(d))
             : MoveDecision::stay();
}

}  // namespace dkd
