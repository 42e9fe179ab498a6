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

#ifndef DKD_CORE_PROTOCOL_HPP_
#define DKD_CORE_PROTOCOL_HPP_

// Look and Compute for one robot. Decisions are pure functions of the view;
// robots carry no state besides their id.

#include <cstdint>
#include <optional>
#include <vector>

#include "core/classifier.hpp"
#include "core/ring.hpp"

namespace dkd {

/// Weak global multiplicity detection: remote nodes read as 0, 1 or many.
enum class Level : std::uint8_t { kNull, kOne, kMany };

Level level_of(std::uint32_t count);

struct RobotView {
  RobotId own_id = 0;
  Node own_node = 0;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint32_t local_count = 0;  // exact, own node only
  bool is_least_id_here = false;
  std::vector<Level> global_levels;
  std::optional<EdgeIndex> missing_edge;
};

/// What `robot` sees in `state` under the current missing edge.
RobotView build_view(const WorldState& state, RobotId robot, std::uint32_t k);

/// Occupancy reconstructed from levels, with every multiplicity read as 2.
Occupancy saturated_occupancy(const RobotView& view);

/// Dispatch on the robot's own classification of its view.
MoveDecision compute_move(const RobotView& view);

/// Spread step; the view must classify as a chain configuration.
MoveDecision spread_decision(const RobotView& view);

/// ReconstructChain step; the view must classify as two blocks.
MoveDecision reconstruct_decision(const RobotView& view);

}  // namespace dkd

#endif  // DKD_CORE_PROTOCOL_HPP_
