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

#ifndef DKD_CORE_CLASSIFIER_HPP_
#define DKD_CORE_CLASSIFIER_HPP_

// Structural classification of a configuration: chains, chain
// configurations, heads, blocks and the target configuration.
//
// Everything here depends only on the node classes {null, singleton,
// multiplicity}, never on exact counts above two, so the same code runs on the
// saturated occupancy a robot sees.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/ring.hpp"

namespace dkd {

/**
 * A chain anchored at the unique multiplicity node.
 *
 * The chain's arc runs from `anchor` (one hop behind the multiplicity) to
 * `terminal` (the null node just past the last occupied node). Occupied nodes
 * inside it are exactly k apart, and the gap after the last one exceeds k.
 */
struct Chain {
  Direction direction = Direction::kCw;
  Node anchor = 0;
  Node terminal = 0;
  std::vector<Node> occupied_nodes;  // starts at the multiplicity
  bool good = true;                  // no missing edge inside the arc

  bool operator==(const Chain&) const = default;
};

enum class BlockKind : std::uint8_t { kChainBlock, kNonChainBlock };

/**
 * A block starting at its head (a multiplicity node or the Head of a dispersed
 * configuration). A chain block has every occupied gap equal to k; a non-chain
 * block has a first gap below k and the rest equal to k. Either way the gap
 * after the last occupied node exceeds k.
 */
struct Block {
  Direction direction = Direction::kCw;
  Node head = 0;
  Node terminal = 0;
  std::vector<Node> occupied_nodes;  // starts at the head
  BlockKind kind = BlockKind::kChainBlock;
  bool contains_missing_edge = false;

  bool operator==(const Block&) const = default;
};

struct ChainConfig {
  Chain cw_chain;
  Chain ccw_chain;
  std::uint32_t range_len = 0;

  bool operator==(const ChainConfig&) const = default;
};

struct TwoBlocks {
  Block chain_block;
  Block non_chain_block;

  bool operator==(const TwoBlocks&) const = default;
};

struct Target {
  bool operator==(const Target&) const = default;
};

struct Invalid {
  std::string reason;
};

using ClassifiedConfiguration = std::variant<ChainConfig, TwoBlocks, Target, Invalid>;

enum class ConfigTag : std::uint8_t { kChain, kBlocks, kTarget, kInvalid };

ConfigTag tag_of(const ClassifiedConfiguration& c);
/// "chain", "blocks", "target" or "invalid".
const char* tag_name(ConfigTag tag);

/// Structural equality; two Invalid verdicts compare equal whatever the reason.
bool same_verdict(const ClassifiedConfiguration& a,
                  const ClassifiedConfiguration& b);

std::string describe(const ClassifiedConfiguration& c);

/// Throws kNotChainClassifiable unless exactly one multiplicity node exists.
std::optional<Chain> find_chain(const Occupancy& occ,
                                std::optional<EdgeIndex> missing,
                                std::uint32_t k, Direction dir);

/// Maximal block from `head` in `dir`, if one exists.
std::optional<Block> find_block(const Occupancy& occ,
                                std::optional<EdgeIndex> missing,
                                std::uint32_t k, Node head, Direction dir);

/// Head of a dispersed configuration: the first node of the unique clockwise
/// pair closer than k. Throws kHeadUndefined on multiplicity configurations.
std::optional<Node> find_head(const Occupancy& occ, std::uint32_t k);

/// Dispersed and every cyclic consecutive occupied gap is at least k.
bool is_target(const Occupancy& occ, std::uint32_t k);

ClassifiedConfiguration classify(const Occupancy& occ,
                                 std::optional<EdgeIndex> missing,
                                 std::uint32_t k);

}  // namespace dkd

#endif  // DKD_CORE_CLASSIFIER_HPP_
