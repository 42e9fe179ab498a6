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

#ifndef DKD_CORE_ADVERSARY_HPP_
#define DKD_CORE_ADVERSARY_HPP_

// Edge-removal strategies. Every strategy removes at most one edge per round,
// so the ring stays connected.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "core/ring.hpp"

namespace dkd {

struct AdversaryDecision {
  std::optional<EdgeIndex> missing_edge;
  std::vector<RobotId> activation_set;  // SSYNC only
};

/// An adaptive online adversary for the fully synchronous scheduler: it sees
/// the whole start-of-round state but not the robots' pending decisions.
class FsyncStrategy {
 public:
  virtual ~FsyncStrategy() = default;
  virtual std::optional<EdgeIndex> choose_fsync(std::uint64_t round,
                                                const WorldState& state) = 0;
  virtual std::string describe() const = 0;
};

class NoRemoval final : public FsyncStrategy {
 public:
  std::optional<EdgeIndex> choose_fsync(std::uint64_t, const WorldState&) override {
    return std::nullopt;
  }
  std::string describe() const override { return "none"; }
};

/// Uniform over {edge 0..n-1} and "no removal", from a seeded stream.
class RandomEdge final : public FsyncStrategy {
 public:
  explicit RandomEdge(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::optional<EdgeIndex> choose_fsync(std::uint64_t round,
                                        const WorldState& state) override;
  std::string describe() const override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Per-round list; rounds past the end remove nothing.
class Scripted final : public FsyncStrategy {
 public:
  explicit Scripted(std::vector<std::optional<EdgeIndex>> script)
      : script_(std::move(script)) {}
  std::optional<EdgeIndex> choose_fsync(std::uint64_t round,
                                        const WorldState& state) override;
  std::string describe() const override;

 private:
  std::vector<std::optional<EdgeIndex>> script_;
};

/// Cuts the edge the protocol is about to use: next to the multiplicity on
/// its counter-clockwise side in a chain configuration, next to the block
/// head inside the chain block otherwise.
class TargetGoodChain final : public FsyncStrategy {
 public:
  explicit TargetGoodChain(std::uint32_t k) : k_(k) {}
  std::optional<EdgeIndex> choose_fsync(std::uint64_t round,
                                        const WorldState& state) override;
  std::string describe() const override { return "good-chain"; }

 private:
  std::uint32_t k_;
};

/// A human adversary: one line per round from `in`, either an edge index or
/// `none`. Bad input re-prompts without consuming a round.
class Interactive final : public FsyncStrategy {
 public:
  Interactive(std::istream& in, std::ostream& prompt) : in_(in), prompt_(prompt) {}
  std::optional<EdgeIndex> choose_fsync(std::uint64_t round,
                                        const WorldState& state) override;
  std::string describe() const override { return "interactive"; }

 private:
  std::istream& in_;
  std::ostream& prompt_;
};

/// Parses "none" or an edge index below n. Returns false on anything else.
bool parse_edge_choice(std::string_view line, std::uint32_t n,
                       std::optional<EdgeIndex>& out);

std::string edge_prompt(std::uint32_t n);

enum class StrategyKind : std::uint8_t { kNoRemoval, kRandomEdge, kScripted, kTargetGoodChain };

struct StrategySpec {
  StrategyKind kind = StrategyKind::kNoRemoval;
  std::uint64_t seed = 0;
  std::vector<std::optional<EdgeIndex>> script;
};

std::unique_ptr<FsyncStrategy> make_strategy(const StrategySpec& spec, std::uint32_t k);

/**
 * Decision-aware adversary for the semi-synchronous scheduler.
 *
 * Each round it activates a single robot on the multiplicity node, round-robin
 * over the ids present there, and removes whichever edge that robot has
 * decided to cross. The activated robot therefore never leaves.
 */
class HostileSsync {
 public:
  /// `pending` must hold the decision of every robot on the multiplicity,
  /// computed from the start-of-round state. Throws kInapplicable when the
  /// state has no multiplicity node.
  AdversaryDecision choose_ssync(std::uint64_t round, const WorldState& state,
                                 const MoveMap& pending) const;
  std::string describe() const { return "hostile-ssync"; }
};

}  // namespace dkd

#endif  // DKD_CORE_ADVERSARY_HPP_
