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

#include "core/classifier.hpp"
#include "core/definition_oracle.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace dkd;

namespace {

constexpr auto kCw = Direction::kCw;
constexpr auto kCcw = Direction::kCcw;

Occupancy singles(std::uint32_t n, std::vector<Node> nodes, Node mult = 0, std::uint32_t count = 0) {
  std::vector<std::uint32_t> c(n, 0);
  for (Node v : nodes) c[v] = 1;
  if (count) c[mult] = count;
  return Occupancy(c);
}

}  // namespace

TEST_CASE("rooted configuration holds two degenerate chains") {
  const auto occ = singles(13, {}, 0, 4);
  const auto cw = find_chain(occ, std::nullopt, 3, kCw);
  REQUIRE(cw);
  CHECK(cw->occupied_nodes == std::vector<Node>{0});
  CHECK(cw->anchor == 12);
  CHECK(cw->terminal == 1);
  CHECK(cw->good);
  const auto verdict = classify(occ, std::nullopt, 3);
  REQUIRE(tag_of(verdict) == ConfigTag::kChain);
  CHECK(std::get<ChainConfig>(verdict).ccw_chain.terminal == 12);
}

TEST_CASE("find_chain follows spacing k and marks missing edges") {
  const auto occ = singles(13, {3, 6}, 0, 3);
  const auto good = find_chain(occ, std::nullopt, 3, kCw);
  REQUIRE(good);
  CHECK(good->occupied_nodes == std::vector<Node>{0, 3, 6});
  CHECK(good->terminal == 7);
  CHECK(good->good);

  const auto bad = find_chain(occ, EdgeIndex{4}, 3, kCw);
  REQUIRE(bad);
  CHECK(bad->occupied_nodes == std::vector<Node>{0, 3, 6});
  CHECK_FALSE(bad->good);

  SUBCASE("both edges at the multiplicity lie in both chains") {
    for (EdgeIndex e : {EdgeIndex{12}, EdgeIndex{0}}) {
      CHECK_FALSE(find_chain(occ, e, 3, kCw)->good);
      CHECK_FALSE(find_chain(occ, e, 3, kCcw)->good);
    }
  }
  SUBCASE("an edge past the terminal leaves the chain good") {
    CHECK(find_chain(occ, EdgeIndex{7}, 3, kCw)->good);
  }
  SUBCASE("a second robot at gap k+1 is not in the chain") {
    CHECK(find_chain(singles(13, {3, 7}, 0, 2), std::nullopt, 3, kCw)->occupied_nodes ==
          std::vector<Node>{0, 3});
  }
  SUBCASE("a gap below k ends with no chain") {
    CHECK_FALSE(find_chain(singles(13, {3, 5}, 0, 2), std::nullopt, 3, kCw));
  }
}

TEST_CASE("find_chain needs exactly one multiplicity") {
  auto code = [](const Occupancy& occ) {
    try {
      find_chain(occ, std::nullopt, 3, kCw);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code(singles(9, {0, 3, 6})) == ErrorCode::kNotChainClassifiable);
  CHECK(code(Occupancy({2, 0, 0, 2, 0, 0, 0, 0, 0})) == ErrorCode::kNotChainClassifiable);
}

TEST_CASE("classify: chain configuration with its range") {
  const auto occ = singles(13, {3, 6, 10}, 0, 3);
  const auto verdict = classify(occ, std::nullopt, 3);
  REQUIRE(tag_of(verdict) == ConfigTag::kChain);
  const auto& cc = std::get<ChainConfig>(verdict);
  CHECK(cc.cw_chain.occupied_nodes == std::vector<Node>{0, 3, 6});
  CHECK(cc.ccw_chain.occupied_nodes == std::vector<Node>{0, 10});
  CHECK(cc.cw_chain.good);
  CHECK(cc.ccw_chain.good);
  // Arcs 12..7 clockwise and 1..9 counter-clockwise leave only node 8 out.
  CHECK(cc.range_len == 12);
  CHECK(same_verdict(verdict, classify_by_definition(occ, std::nullopt, 3)));
}

TEST_CASE("classify: dispersed shape with no gap above k is invalid") {
  // Singletons at 0,1,4,7,10 on 13 nodes with k = 3: the gaps are 1,3,3,3,3,
  // so no block can end and no chain-block / non-chain-block pair exists. Five
  // robots also exceed floor(13/3), so the shape is never reached.
  const auto occ = singles(13, {0, 1, 4, 7, 10});
  CHECK(find_head(occ, 3) == Node{0});
  CHECK(tag_of(classify(occ, std::nullopt, 3)) == ConfigTag::kInvalid);
  CHECK(tag_of(classify_by_definition(occ, std::nullopt, 3)) == ConfigTag::kInvalid);
}

TEST_CASE("classify: two blocks one round after dispersal") {
  const auto occ = singles(13, {0, 1, 4, 7});
  const auto verdict = classify(occ, std::nullopt, 3);
  REQUIRE(tag_of(verdict) == ConfigTag::kBlocks);
  const auto& tb = std::get<TwoBlocks>(verdict);
  CHECK(tb.chain_block.direction == kCcw);
  CHECK(tb.chain_block.occupied_nodes == std::vector<Node>{0});
  CHECK(tb.chain_block.kind == BlockKind::kChainBlock);
  CHECK(tb.non_chain_block.direction == kCw);
  CHECK(tb.non_chain_block.occupied_nodes == std::vector<Node>{0, 1, 4, 7});
  CHECK(tb.non_chain_block.kind == BlockKind::kNonChainBlock);
  CHECK(tb.non_chain_block.terminal == 8);
  CHECK(same_verdict(verdict, classify_by_definition(occ, std::nullopt, 3)));

  SUBCASE("missing edge membership") {
    const auto in_non_chain = std::get<TwoBlocks>(classify(occ, EdgeIndex{5}, 3));
    CHECK(in_non_chain.non_chain_block.contains_missing_edge);
    CHECK_FALSE(in_non_chain.chain_block.contains_missing_edge);
    const auto in_chain = std::get<TwoBlocks>(classify(occ, EdgeIndex{12}, 3));
    CHECK(in_chain.chain_block.contains_missing_edge);
  }
}

TEST_CASE("classify: target and is_target") {
  CHECK(tag_of(classify(singles(9, {0, 3, 6}), std::nullopt, 3)) == ConfigTag::kTarget);
  CHECK(is_target(singles(9, {0, 3, 6}), 3));
  CHECK_FALSE(is_target(singles(9, {0, 3, 5}), 3));
  CHECK_FALSE(is_target(Occupancy({2, 0, 0, 1, 0, 0, 1, 0, 0}), 3));
  CHECK(is_target(singles(9, {4}), 3));
  CHECK_FALSE(is_target(Occupancy({0, 0, 0}), 1));
}

TEST_CASE("find_head") {
  CHECK(find_head(singles(13, {0, 1, 4, 7, 10}), 3) == Node{0});
  CHECK_FALSE(find_head(singles(9, {0, 3, 6}), 3));
  CHECK_FALSE(find_head(singles(12, {0, 1, 5, 6}), 3));  // two short gaps
  CHECK_THROWS_AS(find_head(singles(9, {3}, 0, 2), 3), Error);
}

TEST_CASE("classify: anything with two multiplicities is invalid") {
  CHECK(tag_of(classify(Occupancy({2, 0, 0, 2, 0, 0}), std::nullopt, 2)) == ConfigTag::kInvalid);
  CHECK(tag_of(classify(Occupancy({0, 0, 0, 0}), std::nullopt, 2)) == ConfigTag::kInvalid);
}

TEST_CASE("classifier agrees with the definition checker on every small occupancy") {
  // Counts saturate at 2 for classification purposes, so {0,1,2}^n covers all
  // shapes; every edge choice and k = 2, 3 are tried.
  for (std::uint32_t n = 2; n <= 8; ++n) {
    std::vector<std::uint32_t> c(n, 0);
    for (;;) {
      const Occupancy occ(c);
      for (std::uint32_t k = 2; k <= 3; ++k) {
        for (std::int64_t e = -1; e < static_cast<std::int64_t>(n); ++e) {
          const auto missing = e < 0 ? std::nullopt : std::optional<EdgeIndex>(e);
          const auto fast = classify(occ, missing, k);
          const auto slow = classify_by_definition(occ, missing, k);
          if (!same_verdict(fast, slow)) {
            FAIL_CHECK("n=" << n << " k=" << k << " edge=" << e << ": " << describe(fast)
                            << " vs " << describe(slow));
          }
          if (auto* tb = std::get_if<TwoBlocks>(&fast)) {
            REQUIRE(tb->chain_block.kind != tb->non_chain_block.kind);
          }
        }
      }
      std::size_t i = 0;
      while (i < n && c[i] == 2) c[i++] = 0;
      if (i == n) break;
      ++c[i];
    }
  }
}
