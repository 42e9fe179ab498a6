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

#include "core/adversary.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "core/classifier.hpp"
#include "core/error.hpp"

namespace dkd {

std::optional<EdgeIndex> RandomEdge::choose_fsync(std::uint64_t,
                                                  const WorldState& state) {
  // Rejection sampling on the raw engine output keeps the stream identical
  // across standard libraries, which distributions do not guarantee.
  const std::uint64_t bound = std::uint64_t{state.n()} + 1;
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x < threshold);
  const auto pick = x % bound;
  if (pick == state.n()) return std::nullopt;
  return static_cast<EdgeIndex>(pick);
}

std::string RandomEdge::describe() const {
  return "random(seed=" + std::to_string(seed_) + ")";
}

std::optional<EdgeIndex> Scripted::choose_fsync(std::uint64_t round,
                                                const WorldState& state) {
  if (round >= script_.size()) return std::nullopt;
  const auto e = script_[round];
  if (e && *e >= state.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "script names edge " + std::to_string(*e) + " on a " +
                    std::to_string(state.n()) + "-node ring");
  }
  return e;
}

std::string Scripted::describe() const {
  return "scripted(" + std::to_string(script_.size()) + " rounds)";
}

std::optional<EdgeIndex> TargetGoodChain::choose_fsync(std::uint64_t,
                                                       const WorldState& state) {
  const auto n = state.n();
  const auto verdict = classify(state.occupancy, std::nullopt, k_);
  if (const auto* cc = std::get_if<ChainConfig>(&verdict)) {
    // With nothing missing, Spread heads counter-clockwise.
    return edge_towards(n, cc->cw_chain.occupied_nodes.front(), Direction::kCcw);
  }
  if (const auto* tb = std::get_if<TwoBlocks>(&verdict)) {
    return edge_towards(n, tb->chain_block.head, tb->chain_block.direction);
  }
  return std::nullopt;
}

bool parse_edge_choice(std::string_view line, std::uint32_t n,
                       std::optional<EdgeIndex>& out) {
  const auto first = line.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return false;
  const auto last = line.find_last_not_of(" \t\r\n");
  line = line.substr(first, last - first + 1);
  if (line == "none") {
    out = std::nullopt;
    return true;
  }
  EdgeIndex e = 0;
  const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), e);
  if (ec != std::errc() || ptr != line.data() + line.size() || e >= n) return false;
  out = e;
  return true;
}

std::string edge_prompt(std::uint32_t n) {
  return "edge to remove [0.." + std::to_string(n - 1) + "] or 'none': ";
}

std::optional<EdgeIndex> Interactive::choose_fsync(std::uint64_t,
                                                   const WorldState& state) {
  std::string line;
  for (;;) {
    prompt_ << edge_prompt(state.n()) << std::flush;
    if (!std::getline(in_, line)) {
      throw Error(ErrorCode::kIo, "adversary input closed");
    }
    std::optional<EdgeIndex> choice;
    if (parse_edge_choice(line, state.n(), choice)) return choice;
    prompt_ << "invalid choice '" << line << "'\n";
  }
}

std::unique_ptr<FsyncStrategy> make_strategy(const StrategySpec& spec, std::uint32_t k) {
  switch (spec.kind) {
    case StrategyKind::kNoRemoval: return std::make_unique<NoRemoval>();
    case StrategyKind::kRandomEdge: return std::make_unique<RandomEdge>(spec.seed);
    case StrategyKind::kScripted: return std::make_unique<Scripted>(spec.script);
    case StrategyKind::kTargetGoodChain: return std::make_unique<TargetGoodChain>(k);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown strategy");
}

AdversaryDecision HostileSsync::choose_ssync(std::uint64_t round,
                                             const WorldState& state,
                                             const MoveMap& pending) const {
  const auto mults = state.occupancy.multiplicity_nodes();
  if (mults.empty()) {
    throw Error(ErrorCode::kInapplicable,
                "inapplicable: hostile ssync adversary needs a multiplicity node");
  }
  const Node v = mults.front();
  std::vector<RobotId> here;
  for (const auto& [id, node] : state.registry) {
    if (node == v) here.push_back(id);
  }
  AdversaryDecision out;
  const RobotId r = here[round % here.size()];
  out.activation_set.push_back(r);
  const auto it = pending.find(r);
  if (it == pending.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no pending decision for robot " + std::to_string(r));
  }
  if (!it->second.is_stay()) {
    out.missing_edge = edge_towards(state.n(), v, it->second.direction());
  }
  return out;
}

}  // namespace dkd
