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

#include <algorithm>
#include <sstream>

#include "core/error.hpp"

namespace dkd {

namespace {

std::string node_list(const std::vector<Node>& nodes) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < nodes.size(); ++i) os << (i ? "," : "") << nodes[i];
  os << ']';
  return os.str();
}

// Walks occupied nodes from `cur` in `dir` while gaps equal k. Returns the last
// occupied node reached, or nullopt if a gap below k shows up or the walk comes
// back around to `origin` before a gap above k.
std::optional<Node> walk_exact_gaps(const Occupancy& occ, std::uint32_t k,
                                    Node origin, Node cur, Direction dir,
                                    std::vector<Node>& nodes) {
  for (;;) {
    const auto nx = next_occupied(occ, cur, dir);
    if (nx.distance > k) return cur;
    if (nx.distance < k || nx.to == origin) return std::nullopt;
    nodes.push_back(nx.to);
    cur = nx.to;
  }
}

// Largest circular run of marked nodes.
std::uint32_t longest_marked_run(const std::vector<bool>& marked) {
  const auto n = static_cast<std::uint32_t>(marked.size());
  if (std::all_of(marked.begin(), marked.end(), [](bool b) { return b; })) return n;
  std::uint32_t best = 0, run = 0;
  for (std::uint32_t i = 0; i < 2 * n; ++i) {
    run = marked[i % n] ? run + 1 : 0;
    best = std::max(best, std::min(run, n));
  }
  return best;
}

std::uint32_t range_length(std::uint32_t n, const Chain& a, const Chain& b) {
  std::vector<bool> marked(n, false);
  for (const auto* c : {&a, &b}) {
    for (Node v : arc_nodes(n, c->anchor, c->terminal, c->direction)) marked[v] = true;
  }
  return longest_marked_run(marked);
}

}  // namespace

ConfigTag tag_of(const ClassifiedConfiguration& c) {
  return static_cast<ConfigTag>(c.index());
}

const char* tag_name(ConfigTag tag) {
  switch (tag) {
    case ConfigTag::kChain: return "chain";
    case ConfigTag::kBlocks: return "blocks";
    case ConfigTag::kTarget: return "target";
    case ConfigTag::kInvalid: return "invalid";
  }
  return "invalid";
}

bool same_verdict(const ClassifiedConfiguration& a,
                  const ClassifiedConfiguration& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ChainConfig>(&a)) return *x == std::get<ChainConfig>(b);
  if (const auto* x = std::get_if<TwoBlocks>(&a)) return *x == std::get<TwoBlocks>(b);
  return true;
}

std::string describe(const ClassifiedConfiguration& c) {
  std::ostringstream os;
  if (const auto* cc = std::get_if<ChainConfig>(&c)) {
    os << "chain cw=" << node_list(cc->cw_chain.occupied_nodes)
       << (cc->cw_chain.good ? "(good)" : "(bad)")
       << " ccw=" << node_list(cc->ccw_chain.occupied_nodes)
       << (cc->ccw_chain.good ? "(good)" : "(bad)") << " range=" << cc->range_len;
  } else if (const auto* tb = std::get_if<TwoBlocks>(&c)) {
    os << "blocks head=" << tb->chain_block.head
       << " chain-block " << direction_name(tb->chain_block.direction)
       << node_list(tb->chain_block.occupied_nodes)
       << " non-chain-block " << direction_name(tb->non_chain_block.direction)
       << node_list(tb->non_chain_block.occupied_nodes);
  } else if (std::holds_alternative<Target>(c)) {
    os << "target";
  } else {
    os << "invalid: " << std::get<Invalid>(c).reason;
  }
  return os.str();
}

std::optional<Chain> find_chain(const Occupancy& occ,
                                std::optional<EdgeIndex> missing,
                                std::uint32_t k, Direction dir) {
  const auto mults = occ.multiplicity_nodes();
  if (mults.size() != 1) {
    throw Error(ErrorCode::kNotChainClassifiable,
                "not chain-classifiable: " + std::to_string(mults.size()) +
                    " multiplicity nodes");
  }
  const auto n = occ.size();
  const Node m = mults.front();

  Chain chain;
  chain.direction = dir;
  chain.anchor = step(n, m, opposite(dir));
  // The anchor belongs to the arc, so an occupied anchor is a consecutive
  // occupied pair at distance 1.
  if (occ.occupied(chain.anchor) && k != 1) return std::nullopt;

  chain.occupied_nodes.push_back(m);
  const auto last = walk_exact_gaps(occ, k, m, m, dir, chain.occupied_nodes);
  if (!last) return std::nullopt;
  chain.terminal = step(n, *last, dir);
  chain.good = !(missing && edge_in_arc(n, *missing, chain.anchor, chain.terminal, dir));
  return chain;
}

std::optional<Block> find_block(const Occupancy& occ,
                                std::optional<EdgeIndex> missing,
                                std::uint32_t k, Node head, Direction dir) {
  if (!occ.occupied(head)) return std::nullopt;
  const auto n = occ.size();

  Block block;
  block.direction = dir;
  block.head = head;
  block.occupied_nodes.push_back(head);

  Node cur = head;
  const auto first = next_occupied(occ, head, dir);
  if (first.to == head) {
    if (first.distance <= k) return std::nullopt;
  } else if (first.distance < k) {
    block.kind = BlockKind::kNonChainBlock;
    block.occupied_nodes.push_back(first.to);
    cur = first.to;
  }
  const auto last = walk_exact_gaps(occ, k, head, cur, dir, block.occupied_nodes);
  if (!last) return std::nullopt;
  block.terminal = step(n, *last, dir);
  block.contains_missing_edge =
      missing && edge_in_arc(n, *missing, head, block.terminal, dir);
  return block;
}

std::optional<Node> find_head(const Occupancy& occ, std::uint32_t k) {
  if (!occ.dispersed()) {
    throw Error(ErrorCode::kHeadUndefined,
                "head undefined on multiplicity configurations");
  }
  const auto nodes = occ.occupied_nodes();
  if (nodes.empty()) throw Error(ErrorCode::kNoRobots, "no robots");

  std::optional<Node> head;
  int close_pairs = 0;
  for (Node x : nodes) {
    for (Node y : nodes) {
      if (x != y && distance(occ.size(), x, y, Direction::kCw) < k) {
        ++close_pairs;
        head = x;
      }
    }
  }
  return close_pairs == 1 ? head : std::nullopt;
}

bool is_target(const Occupancy& occ, std::uint32_t k) {
  const auto n = occ.size();
  std::optional<Node> prev;
  std::optional<Node> first;
  for (Node v = 0; v < n; ++v) {
    if (occ[v] == 0) continue;
    if (occ[v] > 1) return false;
    if (prev && v - *prev < k) return false;
    if (!first) first = v;
    prev = v;
  }
  if (!first) return false;
  // Wrap-around gap; a lone robot has no consecutive pair to check.
  return *first == *prev || (*first + n - *prev) >= k;
}

ClassifiedConfiguration classify(const Occupancy& occ,
                                 std::optional<EdgeIndex> missing,
                                 std::uint32_t k) {
  if (occ.total() == 0) return Invalid{"no robots"};
  const auto mults = occ.multiplicity_nodes();
  if (mults.size() > 1) {
    return Invalid{std::to_string(mults.size()) + " multiplicity nodes"};
  }

  Node head;
  if (mults.size() == 1) {
    auto cw = find_chain(occ, missing, k, Direction::kCw);
    auto ccw = find_chain(occ, missing, k, Direction::kCcw);
    if (cw && ccw) {
      const auto range = range_length(occ.size(), *cw, *ccw);
      return ChainConfig{std::move(*cw), std::move(*ccw), range};
    }
    head = mults.front();
  } else {
    if (is_target(occ, k)) return Target{};
    const auto h = find_head(occ, k);
    if (!h) return Invalid{"dispersed configuration without a unique head"};
    head = *h;
  }

  auto cw = find_block(occ, missing, k, head, Direction::kCw);
  auto ccw = find_block(occ, missing, k, head, Direction::kCcw);
  if (!cw || !ccw) {
    return Invalid{std::string("no block ") + (cw ? "ccw" : "cw") + " of head " +
                   std::to_string(head)};
  }
  if (cw->kind == ccw->kind) {
    return Invalid{std::string("both blocks from head ") + std::to_string(head) +
                   " are " +
                   (cw->kind == BlockKind::kChainBlock ? "chain" : "non-chain") +
                   " blocks"};
  }
  if (cw->kind == BlockKind::kChainBlock) return TwoBlocks{std::move(*cw), std::move(*ccw)};
  return TwoBlocks{std::move(*ccw), std::move(*cw)};
}

}  // namespace dkd
